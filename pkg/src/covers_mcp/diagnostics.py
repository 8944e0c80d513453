"""
Timestamped diagnostic lines on stderr.

Results go to stdout; everything here goes to stderr so the two never mix.
"""

import sys
from datetime import datetime

from . import config


def log(component: str, message: str) -> None:
    """Print one `<timestamp> [component] message` line unless COVERS_MCP_QUIET=1."""
    if config.quiet():
        return
    print(f"{datetime.now().isoformat()} [{component}] {message}", file=sys.stderr, flush=True)
