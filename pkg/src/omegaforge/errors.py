"""Exception hierarchy shared across the package."""


class OmegaforgeError(Exception):
    """Base class for all package errors."""


class DivisionByZero(OmegaforgeError, ZeroDivisionError):
    """Division by a zero field element."""


class NegativeOrder(OmegaforgeError):
    """A Laurent polynomial has surviving negative exponents, so t -> 0 diverges."""

    def __init__(self, min_exponent, where=None):
        self.min_exponent = min_exponent
        self.where = where
        loc = f" at {where}" if where is not None else ""
        super().__init__(f"divergent limit: minimal exponent {min_exponent}{loc}")


class ShapeMismatch(OmegaforgeError):
    """Dimensions of tensors, maps or blockings do not line up."""


class SizeLimit(OmegaforgeError):
    """A search exceeded its configured node or size budget."""


class NotSubset(OmegaforgeError):
    """The candidate degeneration support is not contained in the ambient one."""


class NotADistribution(OmegaforgeError):
    """Weights are negative or do not sum to one within tolerance."""


class MissingValueBound(OmegaforgeError):
    """A support triple has no value bound assigned."""

    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"no value bound for block {triple}")


class Infeasible(OmegaforgeError):
    """Requested marginals are not realizable on the given support."""


class NotTight(OmegaforgeError):
    """The laser method requires a tight support."""


class Unbounded(OmegaforgeError):
    """All value bounds are constant in omega; no root to solve for."""


class NoRoot(OmegaforgeError):
    """The asymptotic sum equation has no root in the searched interval."""


class NotLocalBasis(OmegaforgeError):
    """The algebra basis is not unit plus nilpotents, so the filtration is undefined."""


class UnboundVariable(OmegaforgeError):
    """A substitution does not cover every source variable."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"substitution does not bind variable {name!r}")


class BadParams(OmegaforgeError):
    """Invalid construction parameters."""


class Mismatch(OmegaforgeError):
    """Exact comparison failed at a specific entry."""

    def __init__(self, where, got=None, expected=None):
        self.where = where
        self.got = got
        self.expected = expected
        super().__init__(f"mismatch at {where}: got {got}, expected {expected}")


class SpanDeficit(OmegaforgeError):
    """Certified limits span a strictly smaller space than the target."""

    def __init__(self, rank, wanted):
        self.rank = rank
        self.wanted = wanted
        super().__init__(f"span has dimension {rank}, target requires {wanted}")
