"""JSON-over-WebSocket play service."""

from gridarcade.service.server import PROTOCOL_VERSION, SessionRegistry, create_app

__all__ = ["PROTOCOL_VERSION", "SessionRegistry", "create_app"]
