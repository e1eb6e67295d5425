"""Exception hierarchy shared by all blockfusion modules."""


class BlockfusionError(Exception):
    """Base class for all errors raised by this package."""


# -- permutation groups ------------------------------------------------------

class NonBijection(BlockfusionError):
    pass


class EnumerationBoundExceeded(BlockfusionError):
    pass


class SubgroupNotContained(BlockfusionError):
    pass


class NotNormal(BlockfusionError):
    pass


class NotPGroup(BlockfusionError):
    pass


class NotAHomomorphism(BlockfusionError):
    pass


# -- finite fields and linear algebra ----------------------------------------

class NotPrime(BlockfusionError):
    pass


class ZeroPolynomial(BlockfusionError):
    pass


class DimensionMismatch(BlockfusionError):
    pass


# -- group algebras ----------------------------------------------------------

class NonSplitField(BlockfusionError):
    pass


class NotInvariant(BlockfusionError):
    pass


class SupportOutsideCentralizer(BlockfusionError):
    pass


# -- Brauer pairs ------------------------------------------------------------

class NotNormalIn(BlockfusionError):
    pass


class NotSubgroup(BlockfusionError):
    pass


class NotMaximalPair(BlockfusionError):
    pass


# -- fusion systems ----------------------------------------------------------

class NotPSubgroup(BlockfusionError):
    pass


class NotStronglyClosed(BlockfusionError):
    pass


class LiftNotFound(BlockfusionError):
    pass


class BaseMismatch(BlockfusionError):
    pass


# -- towers ------------------------------------------------------------------

class SylowConditionViolated(BlockfusionError):
    pass


class PreconditionViolated(BlockfusionError):
    pass


class SeedIncompatible(BlockfusionError):
    pass


class NoCommonConjugator(BlockfusionError):
    """Transporter sets of a maximal-pair sequence intersect to nothing.

    Raising this would falsify the conjugacy statement on the instance at
    hand, so it must abort loudly rather than be caught and ignored.
    """


class DepthInsufficient(BlockfusionError):
    pass


class NotInterleavable(BlockfusionError):
    pass


class UnsupportedFamily(BlockfusionError):
    pass


class NotDihedralBase(BlockfusionError):
    pass


class SurjectivityFailure(BlockfusionError):
    pass


class ThinningFailed(BlockfusionError):
    pass


# -- path algebras -----------------------------------------------------------

class NotAChain(BlockfusionError):
    pass


class GeneratorNotInJSquared(BlockfusionError):
    pass


class GeneratorsDoNotSpan(BlockfusionError):
    pass


class BadIndex(BlockfusionError):
    pass


# -- cli ---------------------------------------------------------------------

class ParseError(BlockfusionError):
    pass
