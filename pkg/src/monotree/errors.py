"""Exception hierarchy.

Three families, mapped to CLI exit codes:

* ``InputError`` (exit 2): the caller handed in something that violates a
  precondition.
* ``SearchFailure`` (exit 1): the input was fine but the requested object
  was not found (or a budget ran out).
* ``CriticalViolation`` (exit 3): a verified counterexample to a proven
  theorem.  Should never happen; if it does, the instance must be kept.
"""


class MonoTreeError(Exception):
    pass


class InputError(MonoTreeError, ValueError):
    pass


class SearchFailure(MonoTreeError):
    pass


class CriticalViolation(MonoTreeError):
    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance


# -- construction / queries ---------------------------------------------------

class EdgeError(InputError):
    def __init__(self, message, edge):
        super().__init__(f"{message}: {edge!r}")
        self.edge = edge


class DuplicateEdge(EdgeError):
    pass


class LoopEdge(EdgeError):
    pass


class ColorOutOfRange(EdgeError):
    pass


class VertexOutOfRange(EdgeError):
    pass


class EmptyQuery(InputError):
    pass


class NoEdges(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class NotIndependent(PreconditionViolated):
    pass


class HypothesisViolated(PreconditionViolated):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TooSmall(InputError):
    pass


class TooLarge(InputError):
    pass


class NotPrime(InputError):
    pass


class WrongColorCount(InputError):
    pass


# -- search outcomes ----------------------------------------------------------

class Uncoverable(SearchFailure):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class BudgetExceeded(SearchFailure):
    pass


class RetriesExhausted(SearchFailure):
    pass


class StepFailed(SearchFailure):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class YExhausted(StepFailed):
    pass


class StructureBroken(SearchFailure):
    """A random-graph event the proof relies on did not occur.

    ``reason`` is one of ``"dichotomy"`` (a common neighbour joined to both
    ends in the same color), ``"ab_edge"`` (an edge between the two halves
    of the common neighbourhood); both contradict the choice of the pair,
    ``"both_sides"`` (common neighbourhood split, i.e. not connected) or
    ``"empty"`` (no common neighbour at all).
    """

    def __init__(self, message, reason, witness=None):
        super().__init__(message)
        self.reason = reason
        self.witness = witness


class LeafPartitionFailed(SearchFailure):
    pass


class IsolatedInH(SearchFailure):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class NoCrossingEdges(InputError):
    pass
