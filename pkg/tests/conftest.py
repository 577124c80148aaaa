import json
import threading
from functools import lru_cache
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return FIXTURES / "edits.jsonl"


@pytest.fixture(scope="session")
def feature_cases() -> list[dict]:
    return json.loads((FIXTURES / "feature_cases.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def golden_bundle(corpus_path):
    """Random forest bundle trained on the bundled corpus with seed 42."""
    from editguard.pipeline import train_bundle

    bundle, _ = train_bundle(corpus_path, algo="rf", seed=42)
    return bundle


def make_separable(n=400, n_features=15, n_informative=2, seed=7, shuffle_labels=False):
    """Synthetic 2-class data: informative features shifted by the label,
    the rest pure noise. Returns (train Dataset, test Dataset) split 70/30."""
    import numpy as np

    from editguard.ml import Dataset

    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, n_features))
    y = (rng.random(n) < 0.5).astype(int)
    for j in range(n_informative):
        X[:, j] += 3.0 * y
    if shuffle_labels:
        y = rng.permutation(y)
    cut = int(n * 0.7)
    names = tuple(f"f{i}" for i in range(n_features))
    return (
        Dataset(X[:cut], y[:cut], names),
        Dataset(X[cut:], y[cut:], names),
    )


def make_noisy(n=300, n_features=6, seed=13):
    """Weakly informative data with heavy label noise, for overfitting curves."""
    import numpy as np

    from editguard.ml import Dataset

    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, n_features))
    y = ((X[:, 0] + rng.normal(scale=2.5, size=n)) > 0).astype(int)
    return Dataset(X, y, tuple(f"f{i}" for i in range(n_features)))


def accuracy(model, data) -> float:
    hits = sum(
        1
        for row, label in zip(data.X, data.y)
        if model.predict_row(row.tolist())[0] == label
    )
    return hits / len(data)


def lev_oracle(a: str, b: str) -> int:
    """Exhaustive recursive definition of the edit distance (memoized);
    usable only for short strings, kept independent of the library."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            rec(i - 1, j) + 1,
            rec(i, j - 1) + 1,
            rec(i - 1, j - 1) + (a[i - 1] != b[j - 1]),
        )

    return rec(len(a), len(b))


class _StubHandler(BaseHTTPRequestHandler):
    def _respond(self):
        if self.path.startswith("/ok"):
            self.send_response(200)
            self.end_headers()
            if self.command == "GET":
                self.wfile.write(b"ok")
        elif self.path.startswith("/slow"):
            import time

            time.sleep(1.5)
            self.send_response(200)
            self.end_headers()
        elif self.path.startswith("/head405"):
            if self.command == "HEAD":
                self.send_response(405)
                self.end_headers()
            else:
                self.send_response(200)
                self.end_headers()
                self.wfile.write(b"ok")
        else:
            self.send_response(404)
            self.end_headers()

    def do_GET(self):
        self._respond()

    def do_HEAD(self):
        self._respond()

    def log_message(self, *args):
        pass


@pytest.fixture(scope="session")
def stub_http_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _StubHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()
