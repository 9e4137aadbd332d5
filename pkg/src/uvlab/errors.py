"""Exception types shared by every module."""


class UvlabError(Exception):
    """Base class for all errors raised by uvlab."""


class InputError(UvlabError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class CycleError(InputError):
    def __init__(self, a, b):
        super().__init__(f"relation is not antisymmetric: {a} <= {b} <= {a}")
        self.pair = (a, b)


class DuplicateLabelError(InputError):
    def __init__(self, label):
        super().__init__(f"duplicate element name {label!r}")
        self.label = label


class UnknownElement(InputError):
    def __init__(self, element):
        super().__init__(f"unknown element {element!r}")
        self.element = element


class HostMismatch(InputError):
    """A subset mask mentions ids outside its poset."""


class SchemaError(InputError):
    def __init__(self, message, location="/"):
        super().__init__(f"{location}: {message}")
        self.location = location


class SizeLimit(UvlabError):
    """Requested instance exceeds the configured bound (CLI exit code 3)."""


class AxiomViolation(InputError):
    def __init__(self, axiom, witness):
        super().__init__(f"axiom {axiom!r} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class NotAnIdeal(InputError):
    pass


class ZeroRelativization(InputError):
    pass


class DegenerateBA(InputError):
    pass


class NotOpen(InputError):
    pass


class NotUVSpace(InputError):
    pass


class NotCORO(InputError):
    pass


class NoMeet(UvlabError):
    pass


class NoWitness(UvlabError):
    pass


class NotAHomomorphism(InputError):
    pass


class NotAUVMap(InputError):
    pass


class EmptySpace(InputError):
    pass


class NotStone(InputError):
    pass


class NotBoolean(InputError):
    pass


class NotStoneLocale(InputError):
    pass


class ImproperFilter(InputError):
    pass


class TrivialSplit(UvlabError):
    pass


class TooLong(InputError):
    pass


class TooManyBlocks(InputError):
    pass


class CounterexampleError(UvlabError):
    """A checked identity failed.

    ``theorem`` names the check, ``witness`` is a JSON-friendly dict locating
    the failure.  ``instance`` (filled in by the verifier) lets the failure be
    replayed.
    """

    def __init__(self, theorem, witness, instance=None):
        super().__init__(f"{theorem} fails: {witness}")
        self.theorem = theorem
        self.witness = witness
        self.instance = instance
