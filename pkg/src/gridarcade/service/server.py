"""Session server: environments over a JSON message protocol.

One persistent WebSocket carries JSON text frames both ways.  Every
message has `type` and `v` (protocol version, currently 1).  Requests:

    {"type": "create", "v": 1, "game": "breakout", "seed": 7,
     "sticky_prob": 0.1, "ramping": true}            seed optional
    {"type": "act", "v": 1, "session_id": s, "action_code": 0..5}
    {"type": "reset", "v": 1, "session_id": s}
    {"type": "replay_load", "v": 1, "jsonl": "<replay file text>"}
    {"type": "replay_ctl", "v": 1, "session_id": s,
     "op": "seek"|"step", "frame": k}                frame for seek only

Replies are "created" (echoes seed, carries channel_names and the
initial frame), "frame" (sparse cells plus reward/terminal/score) or
"error" ({code, message}).  The server is authoritative: clients never
simulate, replays are re-simulated and verified server-side at load.

Concurrency: each session carries a lock, so concurrent acts to one
session serialize in arrival order; distinct sessions are fully
independent.  Idle sessions are evicted after session_ttl seconds.
"""

import asyncio
import json
import secrets
import time
import uuid

from gridarcade import replay as replay_mod
from gridarcade.core import (
    ConfigError,
    Env,
    EnvConfig,
    EpisodeOverError,
    InvalidActionError,
)

PROTOCOL_VERSION = 1

MODE_INTERACTIVE = "interactive"
MODE_REPLAY = "replay"


class _Session:
    __slots__ = ("id", "mode", "env", "score", "last_used", "lock",
                 "replay_messages", "cursor")

    def __init__(self, session_id, mode):
        self.id = session_id
        self.mode = mode
        self.env = None
        self.score = 0.0
        self.last_used = time.monotonic()
        self.lock = asyncio.Lock()
        self.replay_messages = None
        self.cursor = 0


def _error(code, message):
    return {"type": "error", "v": PROTOCOL_VERSION, "code": code,
            "message": message}


class SessionRegistry:
    def __init__(self, session_ttl=600.0):
        self.session_ttl = session_ttl
        self.sessions = {}

    # -- bookkeeping ---------------------------------------------------

    def evict_expired(self, now=None):
        if now is None:
            now = time.monotonic()
        dead = [
            sid
            for sid, session in self.sessions.items()
            if now - session.last_used > self.session_ttl
        ]
        for sid in dead:
            del self.sessions[sid]
        return len(dead)

    def _get(self, payload):
        sid = payload.get("session_id")
        session = self.sessions.get(sid)
        if session is None:
            raise KeyError(sid)
        session.last_used = time.monotonic()
        return session

    def _frame_message(self, session, reward, terminal):
        env = session.env
        return {
            "type": "frame",
            "v": PROTOCOL_VERSION,
            "session_id": session.id,
            "frame_count": env.frame_count,
            "cells": [list(cell) for cell in env.active_cells()],
            "reward": reward,
            "terminal": terminal,
            "score": session.score,
        }

    # -- handlers ------------------------------------------------------

    async def handle(self, text):
        self.evict_expired()
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            return _error("bad_request", f"not JSON: {exc}")
        if not isinstance(payload, dict):
            return _error("bad_request", "message must be a JSON object")
        version = payload.get("v", PROTOCOL_VERSION)
        if version != PROTOCOL_VERSION:
            return _error(
                "unsupported_version",
                f"protocol version {version!r} not supported, use {PROTOCOL_VERSION}",
            )
        kind = payload.get("type")
        if kind == "create":
            return self._handle_create(payload)
        if kind == "act":
            return await self._handle_act(payload)
        if kind == "reset":
            return await self._handle_reset(payload)
        if kind == "replay_load":
            return self._handle_replay_load(payload)
        if kind == "replay_ctl":
            return await self._handle_replay_ctl(payload)
        return _error("bad_request", f"unknown message type {kind!r}")

    def _handle_create(self, payload):
        seed = payload.get("seed")
        if seed is None:
            seed = secrets.randbits(64)
        try:
            config = EnvConfig(
                game=payload.get("game"),
                seed=seed,
                sticky_prob=payload.get("sticky_prob", 0.1),
                ramping=payload.get("ramping", True),
            )
            env = Env(config)
        except ConfigError as exc:
            return _error("unknown_game", str(exc))
        except TypeError as exc:
            return _error("bad_request", str(exc))
        session = _Session(uuid.uuid4().hex, MODE_INTERACTIVE)
        session.env = env
        self.sessions[session.id] = session
        return {
            "type": "created",
            "v": PROTOCOL_VERSION,
            "session_id": session.id,
            "mode": session.mode,
            "game": config.game,
            "seed": seed,
            "sticky_prob": config.sticky_prob,
            "ramping": config.ramping,
            "channel_names": env.channel_names,
            "frame": self._frame_message(session, 0.0, False),
        }

    async def _handle_act(self, payload):
        try:
            session = self._get(payload)
        except KeyError as exc:
            return _error("unknown_session", f"no session {exc.args[0]!r}")
        if session.mode != MODE_INTERACTIVE:
            return _error("bad_request", "act applies to interactive sessions")
        action = payload.get("action_code")
        if not isinstance(action, int) or isinstance(action, bool):
            return _error("invalid_action", "action_code must be an int 0..5")
        async with session.lock:
            try:
                reward, terminal = session.env.act(action)
            except InvalidActionError as exc:
                return _error("invalid_action", str(exc))
            except EpisodeOverError as exc:
                return _error("episode_over", str(exc))
            session.score += reward
            return self._frame_message(session, reward, terminal)

    async def _handle_reset(self, payload):
        try:
            session = self._get(payload)
        except KeyError as exc:
            return _error("unknown_session", f"no session {exc.args[0]!r}")
        if session.mode != MODE_INTERACTIVE:
            return _error("bad_request", "reset applies to interactive sessions")
        async with session.lock:
            session.env.reset()
            session.score = 0.0
            return self._frame_message(session, 0.0, False)

    def _handle_replay_load(self, payload):
        text = payload.get("jsonl")
        if not isinstance(text, str):
            return _error("bad_request", "replay_load needs a `jsonl` string field")
        try:
            header, frames = replay_mod.parse(text)
            messages = self._render_replay(header, frames)
        except replay_mod.CorruptReplayError as exc:
            return _error("corrupt_replay", str(exc))
        session = _Session(uuid.uuid4().hex, MODE_REPLAY)
        session.replay_messages = messages
        self.sessions[session.id] = session
        for message in messages:
            message["session_id"] = session.id
        return {
            "type": "created",
            "v": PROTOCOL_VERSION,
            "session_id": session.id,
            "mode": session.mode,
            "game": header["game"],
            "seed": header["seed"],
            "sticky_prob": header["sticky_prob"],
            "ramping": header["ramping"],
            "channel_names": Env(
                EnvConfig(game=header["game"], seed=0)
            ).channel_names,
            "frame_total": len(frames),
            "frame": messages[0],
        }

    def _render_replay(self, header, frames):
        """Re-simulate a verified replay into one FrameMessage per frame
        (index 0 is the initial state, i is the state after act i)."""
        config = EnvConfig(
            game=header["game"],
            seed=header["seed"],
            sticky_prob=header["sticky_prob"],
            ramping=header["ramping"],
        )
        initial = Env(config)
        messages = [
            {
                "type": "frame",
                "v": PROTOCOL_VERSION,
                "session_id": None,
                "frame_count": 0,
                "cells": [list(cell) for cell in initial.active_cells()],
                "reward": 0.0,
                "terminal": False,
                "score": 0.0,
            }
        ]
        score = [0.0]

        def hook(index, env, reward, terminal):
            score[0] += reward
            messages.append(
                {
                    "type": "frame",
                    "v": PROTOCOL_VERSION,
                    "session_id": None,
                    "frame_count": env.frame_count,
                    "cells": [list(cell) for cell in env.active_cells()],
                    "reward": reward,
                    "terminal": terminal,
                    "score": score[0],
                }
            )

        replay_mod.simulate(header, frames, frame_hook=hook)
        return messages

    async def _handle_replay_ctl(self, payload):
        try:
            session = self._get(payload)
        except KeyError as exc:
            return _error("unknown_session", f"no session {exc.args[0]!r}")
        if session.mode != MODE_REPLAY:
            return _error("bad_request", "replay_ctl applies to replay sessions")
        op = payload.get("op")
        last = len(session.replay_messages) - 1
        async with session.lock:
            if op == "seek":
                frame = payload.get("frame")
                if not isinstance(frame, int) or isinstance(frame, bool):
                    return _error("bad_request", "seek needs an int `frame`")
                session.cursor = min(max(frame, 0), last)
            elif op == "step":
                session.cursor = min(session.cursor + 1, last)
            else:
                return _error("bad_request", f"unknown replay op {op!r}")
            return session.replay_messages[session.cursor]


def create_app(session_ttl=600.0, static_dir=None):
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect

    app = FastAPI(title="gridarcade play service")
    registry = SessionRegistry(session_ttl=session_ttl)
    app.state.registry = registry

    @app.websocket("/ws")
    async def websocket_endpoint(ws: WebSocket):
        await ws.accept()
        try:
            while True:
                text = await ws.receive_text()
                reply = await registry.handle(text)
                await ws.send_text(json.dumps(reply, separators=(",", ":")))
        except WebSocketDisconnect:
            pass

    @app.get("/healthz")
    async def healthz():
        return {"ok": True, "sessions": len(registry.sessions)}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="static")

    return app
