"""a1gm — Launch the HTTP service."""

import os
import sys

import uvicorn

# Ensure the project root is in path
sys.path.insert(0, os.path.dirname(__file__))

# Load .env before any other imports read os.environ
from dotenv import load_dotenv  # noqa: E402
load_dotenv(os.path.join(os.path.dirname(__file__), ".env"))

if __name__ == "__main__":
    from backend.config import HOST, PORT

    uvicorn.run("backend.server:app", host=HOST, port=PORT)
