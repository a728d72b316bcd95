"""Exception hierarchy.

Every failure the library can diagnose gets its own class so callers (and the
CLI exit-code mapping) can tell malformed input apart from internal assertion
failures and from falsified identities.
"""


class FlagTutteError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------- input errors


class InputError(FlagTutteError):
    """Malformed or inconsistent input data."""


class NotAMatroid(InputError):
    """A basis family violating the exchange axiom."""


class EmptyBases(InputError):
    pass


class InvalidRank(InputError):
    pass


class GroundSetMismatch(InputError):
    pass


class GroundSetTooLarge(InputError):
    pass


class GroundSetExhausted(InputError):
    """A minor that would remove every element."""


class EmptyMatrix(InputError):
    pass


class NotABasis(InputError):
    pass


class NotAQuotient(InputError):
    pass


class NotAQuotientChain(InputError):
    """A constituent pair of a would-be flag matroid is not a quotient."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(
            message
            or "constituents %d and %d do not form a quotient" % (index, index + 1)
        )


class LoopOrColoop(InputError):
    """An element required to be neither a loop nor a coloop is one."""


class HasLoopOrColoop(InputError):
    """A constituent required to be loopless and coloopless is not."""


class RankZeroConstituent(InputError):
    """Equivariant flag-geometric polynomial requested with r_1 = 0."""


class RankGapZero(InputError):
    """Reduced beta polynomial requested for a quotient with r_2 = r_1."""


class ParseError(InputError):
    pass


class UnknownInvariant(InputError):
    pass


class UnknownIdentity(InputError):
    pass


# ------------------------------------------------------------- geometry errors


class GeometryError(FlagTutteError):
    """Cone or generating-function machinery rejected its input."""


class NotPointed(GeometryError):
    """Generators admit a nontrivial nonnegative combination equal to zero."""


class NotUnimodular(GeometryError):
    """A simplicial cone whose rays do not form a lattice basis of their span."""


class ZeroPairing(GeometryError):
    """A symbolic pairing that is identically zero (zero ray)."""


class HypothesisViolated(GeometryError):
    """Slicing hypothesis fails: a term below the hyperplane is not pointed."""


class DegenerateWeights(GeometryError):
    """No candidate weight vector is generic for the given denominators."""


class NonCancellingPole(GeometryError):
    """A denominator factor does not divide the combined numerator."""


# ------------------------------------------------------------ internal errors


class InternalAssertion(FlagTutteError):
    """A bug-surfacing assertion failed; indicates a defect, not bad input."""


class NotInUV(InternalAssertion):
    """A polynomial expected to lie in Q[uv] does not."""


class NotDivisible(InternalAssertion):
    """An exact polynomial division left a remainder."""


class NotNested(InternalAssertion):
    """Greedy bases along a quotient chain failed to nest."""
