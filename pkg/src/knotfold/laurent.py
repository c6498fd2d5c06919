"""Exact sparse Laurent polynomials on a quarter-integer exponent lattice.

Exponents are stored internally multiplied by 4, so integer powers of the
bracket variable ``A`` and integer or half-integer powers of ``q`` share one
integer representation with no rational arithmetic anywhere.  Coefficients
are Python ints, so they never overflow.
"""

from __future__ import annotations

import re

from .errors import InexactDivision, VariableMismatch

QUARTER = 4  # stored exponent = QUARTER * actual exponent


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in a single variable ('A' or 'q').

    ``terms`` maps stored exponents (quarter units) to nonzero integer
    coefficients.  The empty map is the zero polynomial.
    """

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var="q"):
        if var not in ("A", "q"):
            raise ValueError("variable tag must be 'A' or 'q'")
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[int(e)] = int(c)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # --- constructors ---

    @classmethod
    def zero(cls, var="q"):
        return cls({}, var)

    @classmethod
    def one(cls, var="q"):
        return cls({0: 1}, var)

    @classmethod
    def monomial(cls, coeff, exponent, var="q"):
        """coeff * var**exponent with an integer exponent."""
        return cls({QUARTER * exponent: coeff}, var)

    @classmethod
    def half_monomial(cls, coeff, half_exponent, var="q"):
        """coeff * var**(half_exponent / 2)."""
        return cls({2 * half_exponent: coeff}, var)

    @classmethod
    def from_coeffs(cls, min_degree, coeffs, var="q"):
        """Inverse of int_coeffs: dense integer-degree coefficient window."""
        return cls({QUARTER * (min_degree + i): c for i, c in enumerate(coeffs)}, var)

    # --- basic queries ---

    def is_zero(self):
        return not self.terms

    def is_integral(self):
        """True if every exponent is a whole power of the variable."""
        return all(e % QUARTER == 0 for e in self.terms)

    def min_exp4(self):
        return min(self.terms)

    def max_exp4(self):
        return max(self.terms)

    def degree_span(self):
        """max exponent - min exponent, in quarter units; 0 for constants and zero."""
        if not self.terms:
            return 0
        return max(self.terms) - min(self.terms)

    def coefficient(self, exponent):
        """Coefficient of var**exponent (integer exponent)."""
        return self.terms.get(QUARTER * exponent, 0)

    def int_coeffs(self):
        """Dense (min_degree, coefficients) window over whole exponents.

        Raises HalfIntegerExponent if any exponent is fractional.  The zero
        polynomial yields (0, [0]) and a constant yields (0, [c]).
        """
        from .errors import HalfIntegerExponent

        if not self.terms:
            return 0, [0]
        if not self.is_integral():
            raise HalfIntegerExponent(f"non-integer exponent in {self}")
        lo = min(self.terms) // QUARTER
        hi = max(self.terms) // QUARTER
        return lo, [self.terms.get(QUARTER * e, 0) for e in range(lo, hi + 1)]

    # --- arithmetic ---

    def _check_var(self, other):
        if self.var != other.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")

    def __add__(self, other):
        self._check_var(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPolynomial(terms, self.var)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_var(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return LaurentPolynomial(terms, self.var)

    def scale(self, c):
        if c == 0:
            return LaurentPolynomial.zero(self.var)
        return LaurentPolynomial({e: c * v for e, v in self.terms.items()}, self.var)

    def shift4(self, exp4):
        """Multiply by var**(exp4/4)."""
        return LaurentPolynomial({e + exp4: c for e, c in self.terms.items()}, self.var)

    def substitute_inverse(self):
        """var -> 1/var: negate every exponent."""
        return LaurentPolynomial({-e: c for e, c in self.terms.items()}, self.var)

    def exact_div(self, divisor):
        """Exact synthetic division; raises InexactDivision on any remainder."""
        self._check_var(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero(self.var)
        # factor out monomials so both operands have min exponent 0, then
        # run ordinary long division, which terminates when the remainder
        # degree drops below the divisor degree
        shift = min(self.terms) - min(divisor.terms)
        div = {e - min(divisor.terms): c for e, c in divisor.terms.items()}
        rem = {e - min(self.terms): c for e, c in self.terms.items()}
        lead = max(div)
        lead_c = div[lead]
        quot = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if e < lead or c % lead_c:
                raise InexactDivision(f"{self} not divisible by {divisor}")
            qe, qc = e - lead, c // lead_c
            quot[qe] = qc
            for de, dc in div.items():
                k = qe + de
                s = rem.get(k, 0) - qc * dc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return LaurentPolynomial({e + shift: c for e, c in quot.items()},
                                 self.var)

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.var == other.var and self.terms == other.terms)

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    # --- text form ---

    def to_text(self):
        """Canonical text form: `c*q^e` terms, exponents descending.

        Half-integer exponents render as `q^(p/2)`.  Round-trips through
        from_text exactly.
        """
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif e % QUARTER == 0:
                body = f"{mag}*{self.var}^{e // QUARTER}"
            else:
                body = f"{mag}*{self.var}^({e // 2}/2)"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    _TERM_RE = re.compile(
        r"^(\d+)(?:\*([Aq])\^(?:(-?\d+)|\((-?\d+)/2\)))?$")

    @classmethod
    def from_text(cls, text, var="q"):
        text = text.strip()
        if text == "0":
            return cls.zero(var)
        tokens = text.replace("- ", "-").replace("+ ", "+").split()
        terms = {}
        for tok in tokens:
            sign = 1
            if tok[0] == "+":
                tok = tok[1:]
            elif tok[0] == "-":
                sign, tok = -1, tok[1:]
            m = cls._TERM_RE.match(tok)
            if not m:
                raise ValueError(f"bad polynomial term {tok!r} in {text!r}")
            mag, v, whole, half = m.groups()
            if v is not None and v != var:
                raise VariableMismatch(f"expected {var}, found {v}")
            if v is None:
                e = 0
            elif whole is not None:
                e = QUARTER * int(whole)
            else:
                e = 2 * int(half)
            terms[e] = terms.get(e, 0) + sign * int(mag)
        return cls(terms, var)

    def __repr__(self):
        return f"LaurentPolynomial({self.to_text()!r}, var={self.var!r})"


def laurent_arith(a, b, op):
    """Spec-surface arithmetic entry point: op in {'add', 'multiply'}."""
    if op == "add":
        return a + b
    if op == "multiply":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute_inverse(p):
    return p.substitute_inverse()
