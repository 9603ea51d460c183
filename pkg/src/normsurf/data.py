"""Access to the triangulations shipped with the package."""
from __future__ import annotations

from importlib import resources

from .formats import parse_triangulation

_ROOT = resources.files("normsurf") / "corpus"


def corpus_names():
    """Names of the shipped triangulations, sorted."""
    return sorted(p.name[:-4] for p in _ROOT.iterdir() if p.name.endswith(".tri"))


def corpus_path(name):
    return _ROOT / f"{name}.tri"


def load(name):
    path = corpus_path(name)
    return parse_triangulation(path.read_text(), source=f"corpus/{name}.tri")


def load_all():
    return {name: load(name) for name in corpus_names()}
