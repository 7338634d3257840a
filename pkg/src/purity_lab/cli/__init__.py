"""Command-line front end: session files and the ``purity-lab`` commands."""

from .commands import COMMANDS, Result
from .main import main
from .session import Session, SessionError, parse_session

__all__ = ["COMMANDS", "Result", "Session", "SessionError", "main", "parse_session"]
