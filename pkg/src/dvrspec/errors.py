"""Exception types shared across the package."""


class DvrSpecError(Exception):
    """Base class for all library errors."""


class HorizonExceeded(DvrSpecError):
    """A finite window or search range was not large enough."""


class BudgetExhausted(DvrSpecError):
    """The search budget ran out before a decision was reached.

    This is not a negative answer: the question is still open.
    """


class NotFiniteLength(DvrSpecError):
    """The module has a free summand, so its Loewy length is infinite."""


class ZeroComplex(DvrSpecError):
    """The complex has no nonzero homology."""


class PreconditionUnproved(DvrSpecError):
    """A decider needs a hypothesis that could not be established."""


class InvalidConstruction(DvrSpecError):
    """Interleaving data violates the gluing conditions."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class CertificateFailed(DvrSpecError):
    """No certificate was found inside the budget."""


class FiniteS(DvrSpecError):
    """The index set is finite, so no refutation index exists."""


class NotAPrime(DvrSpecError):
    """The class does not generate a prime ideal."""


class NotAMorphism(DvrSpecError):
    """A map between lattices fails to preserve the structure."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LatticeError(DvrSpecError):
    """Base for lattice validation failures."""

    code = "invalid"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPoset(LatticeError):
    code = "not_a_poset"


class NotALattice(LatticeError):
    code = "not_a_lattice"


class NotDistributive(LatticeError):
    code = "not_distributive"


class Unbounded(LatticeError):
    code = "unbounded"


class MalformedInput(DvrSpecError):
    """Input JSON did not describe a valid object."""
