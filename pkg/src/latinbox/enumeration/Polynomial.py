from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P

from latinbox.arrays import FormatError

class Polynomial:
    """Univariate polynomial in p with exact (integer or float) coefficients,
    lowest degree first."""
    def __init__(self, coefficients):
        coefficients = list(coefficients) or [0]
        while len(coefficients) > 1 and coefficients[-1] == 0:
            coefficients.pop()
        self._coefficients: tuple = tuple(coefficients)

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> Polynomial:
        return cls([0] * degree + [coefficient])

    @property
    def coefficients(self) -> tuple:
        return self._coefficients

    @property
    def degree(self) -> int:
        return len(self._coefficients) - 1

    def coefficient(self, degree: int):
        if 0 <= degree < len(self._coefficients):
            return self._coefficients[degree]
        return 0

    def __call__(self, x):
        value = P.polyval(np.asarray(x, dtype=float), np.array(self._coefficients, dtype=float))
        if np.ndim(value) == 0:
            return float(value)
        return value

    def derivative(self) -> Polynomial:
        return Polynomial([d * c for d, c in enumerate(self._coefficients)][1:])

    def __add__(self, other: Polynomial) -> Polynomial:
        size = max(len(self._coefficients), len(other._coefficients))
        return Polynomial([self.coefficient(d) + other.coefficient(d) for d in range(size)])

    def __sub__(self, other: Polynomial) -> Polynomial:
        size = max(len(self._coefficients), len(other._coefficients))
        return Polynomial([self.coefficient(d) - other.coefficient(d) for d in range(size)])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self):
        return hash(self._coefficients)

    def __repr__(self):
        terms = []
        for degree, c in enumerate(self._coefficients):
            if c == 0:
                continue
            power = "" if degree == 0 else ("p" if degree == 1 else f"p^{degree}")
            scale = "" if power and c in (1, -1) else str(abs(c))
            terms.append(("-" if c < 0 else "+", scale + power))

        if not terms:
            return "Polynomial(0)"
        text = "".join(f" {sign} {body}" for sign, body in terms).strip()
        return f"Polynomial({text.removeprefix('+ ')})"

    def toJson(self) -> dict:
        return {"coefficients": [c if isinstance(c, int) else float(c) for c in self._coefficients]}

    @classmethod
    def fromJson(cls, data: dict) -> Polynomial:
        try:
            return cls(data["coefficients"])
        except (KeyError, TypeError) as e:
            raise FormatError(f"malformed polynomial json: {e}") from e
