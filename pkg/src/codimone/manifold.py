"""Symbolic connected-sum descriptions of supporting manifolds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ManifoldDescription:
    """``k`` copies of T^n, ``g`` handles S^(n-1) x S^1 and an optional N^n."""

    n: int
    torus_count: int
    handle_count: int = 0
    projective_like: Fraction | None = None
    special: str | None = None

    def __post_init__(self):
        if self.torus_count < 0 or self.handle_count < 0:
            raise ValueError("summand counts must be non-negative")

    def summands(self) -> list[str]:
        n = self.n
        parts = [f"T^{n}"] * self.torus_count
        parts += [f"(S^{n - 1}xS^1)"] * self.handle_count
        if self.projective_like is not None:
            parts.append(f"N^{n}[p={format_rational(self.projective_like)}]")
        if not parts:
            parts = [self.special or f"S^{n}"]
        return parts

    def __str__(self):
        return " # ".join(self.summands())

    def report(self) -> list[str]:
        lines = [f"manifold: {self}", f"n: {self.n}", f"k: {self.torus_count}",
                 f"g: {self.handle_count}"]
        if self.projective_like is not None:
            lines.append(f"pontryagin: {format_rational(self.projective_like)}")
        return lines
