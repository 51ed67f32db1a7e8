"""Small named finite spaces, given as posets."""

from __future__ import annotations

from .order import FinitePoset, poset


def point(label: str = "*") -> FinitePoset:
    return poset([label])


def chain(k: int, prefix: str = "c") -> FinitePoset:
    """``c0 < c1 < ... < c{k-1}``."""
    labels = [f"{prefix}{i}" for i in range(k)]
    return poset(labels, zip(labels, labels[1:]))


def antichain(k: int, prefix: str = "p") -> FinitePoset:
    return poset([f"{prefix}{i}" for i in range(k)])


def pseudocircle() -> FinitePoset:
    """Minimal finite model of the circle: ``a, b < c, d``."""
    return poset("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def circle_model(n: int, prefix: str = "x") -> FinitePoset:
    """``2n`` points around a circle, even points minimal.

    ``x{2i}`` lies below its neighbours ``x{2i-1}`` and ``x{2i+1}``.
    """
    if n < 2:
        raise ValueError("a circle model needs n >= 2")
    m = 2 * n
    labels = [f"{prefix}{i}" for i in range(m)]
    pairs = []
    for i in range(0, m, 2):
        pairs.append((labels[i], labels[i + 1]))
        pairs.append((labels[i], labels[i - 1]))
    return poset(labels, pairs)


def suspension(p: FinitePoset, top: tuple[str, str] = ("n", "s")) -> FinitePoset:
    """Non-Hausdorff suspension: two incomparable points above everything."""
    labels = list(p.elements) + list(top)
    pairs = list(p.strict_pairs())
    pairs += [(x, t) for x in p.elements for t in top]
    return poset(labels, pairs)


def cone(p: FinitePoset, apex: str = "v") -> FinitePoset:
    """``p`` with a new maximum; contractible."""
    labels = list(p.elements) + [apex]
    return poset(labels, list(p.strict_pairs()) + [(x, apex) for x in p.elements])


NAMED = {
    "point": point,
    "pseudocircle": pseudocircle,
    "circle8": lambda: circle_model(4),
    "circle4": lambda: circle_model(2, prefix="y"),
}
