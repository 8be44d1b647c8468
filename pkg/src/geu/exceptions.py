"""Exception types raised by the decision-theory core."""


class GeuError(Exception):
    """Base class for all library errors."""


class AxiomViolation(GeuError):
    """A domain or measure failed one of its defining laws.

    ``axiom`` is one of E1..E4 (expectation domains) or Pl1..Pl3
    (plausibility measures); ``witness`` carries the violating tuple.
    """

    def __init__(self, axiom, witness, message=""):
        self.axiom = axiom
        self.witness = witness
        detail = f"{axiom} violated"
        if message:
            detail += f": {message}"
        detail += f" (witness: {witness!r})"
        super().__init__(detail)


class ParseError(GeuError):
    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class NotAProbability(GeuError):
    def __init__(self, name, reason=""):
        self.name = name
        super().__init__(f"measure {name!r} is not a probability: {reason}")


class UnknownAct(GeuError):
    pass


class UnknownLottery(GeuError):
    pass


class NotPlausibilistic(GeuError):
    pass


class NotStandard(GeuError):
    pass


class NotStandardDomain(GeuError):
    pass


class NotCredalProblem(GeuError):
    pass


class NotTotallyOrdered(GeuError):
    pass


class NonNumericUtility(GeuError):
    pass


class UniverseMismatch(GeuError):
    pass


class NotABeliefFunction(GeuError):
    def __init__(self, witness, message=""):
        self.witness = witness
        super().__init__(message or f"negative permutation marginal: {witness!r}")


class DomainMismatch(GeuError):
    pass


class _WitnessError(GeuError):
    def __init__(self, witness, message):
        self.witness = witness
        super().__init__(f"{message} (witness: {witness!r})")


class NotUniform(_WitnessError):
    """Relation treats indistinguishable acts differently.

    Witness is a quadruple (a1, a2, b1, b2) with a_i ~ b_i but
    (a1, a2) and (b1, b2) on different sides of the relation.
    """

    def __init__(self, witness):
        super().__init__(witness, "relation is not uniform")


class NotRespectingUtility(_WitnessError):
    def __init__(self, witness):
        super().__init__(witness, "relation does not respect utility")


class NotWeaklyRespectingUtility(_WitnessError):
    def __init__(self, witness):
        super().__init__(witness, "relation does not weakly respect utility")


class NotReflexive(_WitnessError):
    """A tabulated rule must relate every act to itself to be representable."""

    def __init__(self, witness):
        super().__init__(witness, "relation is not reflexive")


class MissingOuterPart(GeuError):
    pass


class TooLarge(GeuError):
    def __init__(self, size, cap, what="state space"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has size {size}, exceeding the cap {cap}")
