"""Layered call-graph extraction and navigation for C# code bases."""

import json

from . import _core
from ._core import (
    DEFAULT_MAX_DEPTH,
    ConfigError,
    IntegrityError,
    NotFoundError,
    TiergraphError,
    ValidationError,
    strip_noise,
)

__all__ = [
    "DEFAULT_MAX_DEPTH",
    "ConfigError",
    "IntegrityError",
    "NotFoundError",
    "TiergraphError",
    "ValidationError",
    "Workspace",
    "compare",
    "extract",
    "strip_noise",
]


def extract(source, path="", project=""):
    """Extraction model of one C# source text."""
    return json.loads(_core.extract(source, path, project))


def compare(graph, truth_text):
    """Score a call graph (dict or JSON text) against one ground-truth document."""
    if not isinstance(graph, str):
        graph = json.dumps(graph)
    return json.loads(_core.compare(graph, truth_text))


class Workspace:
    """A config plus the snapshot that queries run against."""

    def __init__(self, config="", data_dir=None):
        self._ws = _core.Workspace(str(config), None if data_dir is None else str(data_dir))

    @property
    def data_dir(self):
        return self._ws.data_dir

    def build(self, now=None):
        """Build a snapshot in memory without persisting it."""
        return json.loads(self._ws.build(now))

    def sweep(self, now=None):
        """Rebuild, persist the snapshot and append the daily metrics."""
        return json.loads(self._ws.sweep(now))

    def load(self, snapshot_id=None):
        return json.loads(self._ws.load(snapshot_id))

    def summary(self):
        return json.loads(self._ws.summary())

    def search(self, keyword, ci=False):
        return json.loads(self._ws.search(keyword, ci))

    def graph(self, entry, max_depth=DEFAULT_MAX_DEPTH, format="json"):
        text = self._ws.graph(entry, max_depth, format)
        return json.loads(text) if format == "json" else text

    def bench(self, suite_dir):
        return json.loads(self._ws.bench(str(suite_dir)))

    def metrics(self):
        return json.loads(self._ws.metrics())

    def request(self, method, path, params=None):
        """Answer one API request from the persisted store; returns (status, body)."""
        status, body = self._ws.request(method, path, {k: str(v) for k, v in (params or {}).items()})
        return status, json.loads(body)
