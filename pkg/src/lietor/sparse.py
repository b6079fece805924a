"""Sparse algebra elements: dicts from hashable basis keys to exact scalars.

Scalars are ints or ``fractions.Fraction``; zero coefficients are never
stored, so two dicts are equal iff the elements are equal.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Dict, Hashable, Tuple

Elt = Dict[Hashable, object]


def add_scaled(dst: Elt, src: Elt, c=1) -> Elt:
    """In-place dst += c * src, dropping zeros."""
    if not c:
        return dst
    for k, v in src.items():
        nv = dst.get(k, 0) + c * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)
    return dst


def scaled(e: Elt, c) -> Elt:
    if not c:
        return {}
    return {k: c * v for k, v in e.items()}


def neg(e: Elt) -> Elt:
    return {k: -v for k, v in e.items()}


def sub(a: Elt, b: Elt) -> Elt:
    out = dict(a)
    return add_scaled(out, b, -1)


def is_zero(e: Elt) -> bool:
    return not e


def single(key: Hashable, c=1) -> Elt:
    return {key: c} if c else {}


def _flatten(x) -> Tuple:
    if isinstance(x, tuple):
        out: Tuple = ()
        for y in x:
            out += _flatten(y)
        return out
    return (Q(x),) if isinstance(x, (int, Q)) else (x,)


def key_sort_key(key: Hashable) -> Tuple:
    """Deterministic total order on basis keys of mixed shapes."""
    tag = key[0]
    return (tag, len(_flatten(key)), _flatten(key[1:]))


def fmt_scalar(c) -> str:
    c = Q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"
