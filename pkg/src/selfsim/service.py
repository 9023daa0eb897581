"""HTTP facade: sessions holding an analyzed system plus a zoom position.

Bodies and responses are plain JSON; images go out as PNG.  Analyses are
cached by spec content hash, sessions are evicted LRU, and zoom mutations
are serialized per session.
"""

from __future__ import annotations

import hashlib
import json
import secrets
import threading
from collections import OrderedDict
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .analysis import DEFAULT_FILTER, Analysis, analyze
from .errors import (
    IfsParseError,
    NoInteriorWordError,
    NotFiniteTypeError,
    OverlapError,
    SeedNotInteriorError,
    SelfsimError,
    WorklistExceededError,
)
from .exact import canonical_ifs_text, parse_ifs
from .interior import parse_word
from .presets import list_presets, load_preset
from .render import default_window, render_zoom_frame
from .report import summary_json
from .zoom import ZoomState, initial_state, zoom_in, zoom_out

RARE_THRESHOLD = 0.001


@dataclass
class Session:
    id: str
    analysis: Analysis
    state: ZoomState
    lock: threading.Lock = field(default_factory=threading.Lock)


class _AnalysisCache:
    """Content-hash keyed cache of finished analyses, shared across sessions."""

    def __init__(self):
        self._lock = threading.Lock()
        self._done: dict[str, Analysis] = {}

    def get(self, spec, filter_kind: str, seed_word) -> Analysis:
        key_text = canonical_ifs_text(spec) + f"|{filter_kind}|{seed_word}"
        key = hashlib.sha256(key_text.encode()).hexdigest()
        with self._lock:
            hit = self._done.get(key)
        if hit is not None:
            return hit
        a = analyze(spec, filter_kind=filter_kind, seed_word=seed_word)
        with self._lock:
            self._done.setdefault(key, a)
        return a


def _child_boxes(analysis: Analysis) -> list[dict]:
    """Bounding boxes of the m child pieces of the reference copy, in
    normalized image coordinates (origin top left, y down); the explorer
    draws its click overlay from these instead of recomputing geometry."""
    spec = analysis.spec
    radius = float(analysis.view.radius)
    window = default_window(radius)
    half = window.half_width
    rad = radius * spec.r
    boxes = []
    for i in range(1, spec.m + 1):
        center = spec.map_at(i).t.to_complex()
        x0 = (center.real - rad + half) / (2 * half)
        x1 = (center.real + rad + half) / (2 * half)
        y0 = (half - (center.imag + rad)) / (2 * half)
        y1 = (half - (center.imag - rad)) / (2 * half)
        boxes.append(
            {
                "label": i,
                "x0": max(0.0, min(1.0, x0)),
                "y0": max(0.0, min(1.0, y0)),
                "x1": max(0.0, min(1.0, x1)),
                "y1": max(0.0, min(1.0, y1)),
            }
        )
    return boxes


def _neighborhood_json(analysis: Analysis, k: int) -> dict:
    ng = analysis.ng
    p = float(ng.stationary.as_floats[k - 1])
    return {
        "index": k,
        "members": list(ng.members(k)),
        "size": ng.size(k),
        "p": p,
        "rare": p < RARE_THRESHOLD,
        "successors": [ng.successor(k, i) for i in range(1, ng.m + 1)],
    }


def _state_json(session: Session) -> dict:
    state = session.state
    return {
        "sessionId": session.id,
        "current": state.current,
        "stepCount": state.step_count,
        "historyDepth": len(state.history),
        "lastChild": state.last_child,
        "neighborhood": _neighborhood_json(session.analysis, state.current),
    }


def create_app(
    preset_dir: str | None = None, max_sessions: int = 64
) -> FastAPI:
    app = FastAPI(title="selfsim", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: OrderedDict[str, Session] = OrderedDict()
    table_lock = threading.Lock()
    cache = _AnalysisCache()
    png_cache: OrderedDict[tuple, bytes] = OrderedDict()

    def get_session(session_id: str) -> Session:
        with table_lock:
            session = sessions.get(session_id)
            if session is not None:
                sessions.move_to_end(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/sessions")
    async def create_session(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError:
            raise HTTPException(status_code=400, detail="body is not JSON")
        if not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="body must be an object")
        try:
            if "preset" in body:
                spec = load_preset(body["preset"], preset_dir)
            elif "ifs" in body:
                spec = parse_ifs(body["ifs"])
            elif "maps" in body:
                spec = parse_ifs(body)
            else:
                raise HTTPException(
                    status_code=400,
                    detail=f"give 'preset' (one of {', '.join(list_presets(preset_dir))}) "
                    "or 'ifs'",
                )
            filter_kind = body.get("filter", DEFAULT_FILTER)
            if filter_kind not in ("continuum", "all"):
                raise HTTPException(status_code=400, detail="filter: continuum or all")
            seed_word = None
            if body.get("seedWord"):
                seed_word = parse_word(str(body["seedWord"]), spec.m)
        except HTTPException:
            raise
        except (IfsParseError, ValueError, KeyError, FileNotFoundError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        try:
            analysis = cache.get(spec, filter_kind, seed_word)
        except (
            NotFiniteTypeError,
            OverlapError,
            WorklistExceededError,
            NoInteriorWordError,
            SeedNotInteriorError,
        ) as e:
            raise HTTPException(status_code=422, detail=str(e))
        except SelfsimError as e:
            raise HTTPException(status_code=422, detail=str(e))
        session = Session(
            id=secrets.token_hex(16),
            analysis=analysis,
            state=initial_state(analysis.ng, seed=int(body.get("seed", 0))),
        )
        with table_lock:
            while len(sessions) >= max_sessions:
                sessions.popitem(last=False)
            sessions[session.id] = session
        return {
            "sessionId": session.id,
            "summary": summary_json(analysis),
            "childBoxes": _child_boxes(analysis),
            "state": _state_json(session),
        }

    @app.post("/sessions/{session_id}/zoom")
    async def zoom(session_id: str, request: Request):
        session = get_session(session_id)
        try:
            body = await request.json()
        except json.JSONDecodeError:
            raise HTTPException(status_code=400, detail="body is not JSON")
        action = body.get("action") if isinstance(body, dict) else None
        if action == "in":
            child = body.get("child")
            if not isinstance(child, int) or not 1 <= child <= session.analysis.ng.m:
                raise HTTPException(
                    status_code=400,
                    detail=f"child must be an integer in 1..{session.analysis.ng.m}",
                )
            with session.lock:
                session.state = zoom_in(session.state, child)
                return _state_json(session)
        if action == "out":
            with session.lock:
                try:
                    session.state = zoom_out(session.state)
                except SelfsimError as e:
                    raise HTTPException(status_code=422, detail=str(e))
                return _state_json(session)
        raise HTTPException(status_code=400, detail="action must be 'in' or 'out'")

    @app.get("/sessions/{session_id}/view.png")
    def view_png(session_id: str, pixels: int = 512, depth: int | None = None):
        session = get_session(session_id)
        if not 16 <= pixels <= 2048:
            raise HTTPException(status_code=400, detail="pixels must be in 16..2048")
        analysis = session.analysis
        with session.lock:
            current = session.state.current
        max_depth = depth if depth is not None else 16
        if not 1 <= max_depth <= 32:
            raise HTTPException(status_code=400, detail="depth must be in 1..32")
        key = (
            canonical_ifs_text(analysis.spec),
            analysis.filter_kind,
            current,
            pixels,
            max_depth,
        )
        with table_lock:
            png = png_cache.get(key)
            if png is not None:
                png_cache.move_to_end(key)
        if png is None:
            raster = render_zoom_frame(
                analysis.view,
                analysis.ng.member_maps(current),
                window=default_window(float(analysis.view.radius), pixels),
                max_depth=max_depth,
            )
            png = raster.to_png()
            with table_lock:
                png_cache[key] = png
                while len(png_cache) > 256:
                    png_cache.popitem(last=False)
        return Response(content=png, media_type="image/png")

    @app.get("/sessions/{session_id}/stats")
    def stats(session_id: str):
        session = get_session(session_id)
        ng = session.analysis.ng
        return {
            "stats": ng.stats().as_dict(),
            "stationary": [float(v) for v in ng.stationary.as_floats],
        }

    @app.get("/sessions/{session_id}/neighborhoods/{k}")
    def neighborhood(session_id: str, k: int):
        session = get_session(session_id)
        if not 1 <= k <= session.analysis.ng.K:
            raise HTTPException(
                status_code=404,
                detail=f"neighborhood index outside 1..{session.analysis.ng.K}",
            )
        return _neighborhood_json(session.analysis, k)

    return app


def main(argv: list[str] | None = None) -> int:
    import argparse
    import os

    import uvicorn

    parser = argparse.ArgumentParser(prog="selfsim-service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument(
        "--port", type=int, default=int(os.environ.get("SELFSIM_PORT", "8000"))
    )
    parser.add_argument("--preset-dir", default=None)
    parser.add_argument("--max-sessions", type=int, default=64)
    args = parser.parse_args(argv)
    app = create_app(preset_dir=args.preset_dir, max_sessions=args.max_sessions)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    main()
