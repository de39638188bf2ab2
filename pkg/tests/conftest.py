import threading
from pathlib import Path

import pytest

from tappy.devices import load_registry
from tappy.service import ServiceConfig, build_server

SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def samples_dir() -> Path:
    return SAMPLES_DIR


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def registry():
    return load_registry()


@pytest.fixture(scope="session")
def service_url():
    """A live service instance on an ephemeral loopback port."""
    server = build_server(ServiceConfig(port=0))
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{port}"
    server.shutdown()
    server.server_close()
