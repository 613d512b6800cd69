"""a1gm service configuration — integrates with shared constants.py."""

import os
import sys
from pathlib import Path

# Add project root to path so we can import constants
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from constants import ETA_TOL, LOG_LEVEL  # noqa: E402,F401

# Server
HOST = os.environ.get("A1GM_HOST", "127.0.0.1")
PORT = int(os.environ.get("A1GM_PORT", "8000"))

VERSION = "1.0.0"

# Largest matrix accepted over HTTP (rows * cols)
MAX_ENTRIES = 4_000_000
