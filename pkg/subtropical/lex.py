"""
Lexicographic extremes of a frame. Under any coordinate order the lex-maximal
(and lex-minimal) point of a finite set is a vertex of its convex hull.
"""
from polynomials.types import SignedFrame


def lex_key(p, order):
    return tuple(p[i] for i in order)


def lex_vertex(frame, order=None, direction="max"):
    """
    ``frame`` is a SignedFrame or any iterable of exponent vectors; ``order`` a
    permutation of coordinate indices (default: natural order).
    """
    points = frame.points if isinstance(frame, SignedFrame) else frozenset(tuple(p) for p in frame)
    if not points:
        raise ValueError("lex_vertex needs a nonempty frame.")
    dimension = len(next(iter(points)))
    order = tuple(range(dimension)) if order is None else tuple(order)
    if sorted(order) != list(range(dimension)):
        raise ValueError(f"{order} is not a permutation of the {dimension} coordinates.")
    if direction == "max":
        return max(points, key=lambda p: lex_key(p, order))
    if direction == "min":
        return min(points, key=lambda p: lex_key(p, order))
    raise ValueError(f"direction must be 'max' or 'min', not {direction!r}.")
