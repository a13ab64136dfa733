"""Small shared builders for tests."""

from metator.cli import Session
from metator.config import validate


def session(q, n, kappa, **extra):
    data = {"q": q, "n": n, "kappa": kappa}
    data.update(extra)
    return Session(validate(data))
