"""Exception hierarchy shared by all engine modules."""


class PcafeError(Exception):
    """Base class for every engine error."""


class InputError(PcafeError):
    """Structurally bad input (maps to CLI exit code 2)."""


class IncompleteDataError(PcafeError):
    """Required expert data is missing (maps to CLI exit code 4)."""


class ParameterError(PcafeError):
    """Bad runtime parameter such as theta (maps to CLI exit code 5)."""


# -- matrix construction ----------------------------------------------------

class MissingPair(IncompleteDataError):
    def __init__(self, pairs):
        self.pairs = list(pairs)
        super().__init__(f"missing upper-triangle pairs: {self.pairs}")


class DuplicatePair(InputError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"pair {pair} supplied more than once")


class OutOfScale(InputError):
    def __init__(self, pair, value, lo, hi):
        self.pair, self.value = pair, value
        super().__init__(f"value {value} at {pair} outside scale [{lo}, {hi}]")


class DimensionMismatch(InputError):
    pass


class EmptyPanel(InputError):
    def __init__(self):
        super().__init__("expert panel is empty")


class ZeroWeight(ParameterError):
    def __init__(self):
        super().__init__("weight vector has a zero component; ratio undefined")


class ZeroEntry(ParameterError):
    def __init__(self):
        super().__init__("matrix has a zero entry; geometric mean degenerate")


class NoRIAvailable(ParameterError):
    def __init__(self, n):
        self.n = n
        super().__init__(
            f"no random consistency index for n={n}; supply a custom RI table"
        )


class TooSmall(ParameterError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"triad scan requires n >= 3, got n={n}")


class ThetaTooSmall(ParameterError):
    def __init__(self, theta, minimum):
        self.theta, self.minimum = theta, minimum
        super().__init__(
            f"theta={theta} too small; need theta >= {minimum} "
            "to keep all weights nonnegative"
        )


# -- evaluation -------------------------------------------------------------

class CountMismatch(InputError):
    def __init__(self, total, expert_count):
        super().__init__(f"tallies sum to {total}, expected {expert_count}")


class MissingWeights(IncompleteDataError):
    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"no weight vector for non-leaf node {node_id!r}")


class MissingLeaf(IncompleteDataError):
    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"no grade distribution for leaf {node_id!r}")


class ArityMismatch(InputError):
    def __init__(self, node_id, expected, got):
        self.node_id = node_id
        super().__init__(
            f"node {node_id!r} has {expected} children but got {got} weights"
        )


# -- session ingestion ------------------------------------------------------

class Malformed(InputError):
    """Document is not syntactically valid."""


class SchemaViolation(InputError):
    """Document parsed but violates the session/hierarchy schema."""


class ScaleMismatch(InputError):
    def __init__(self, detail):
        super().__init__(detail)


class IncompleteJudgments(IncompleteDataError):
    def __init__(self, expert_id, node_id, detail=""):
        self.expert_id, self.node_id = expert_id, node_id
        msg = f"expert {expert_id!r} has incomplete judgments for node {node_id!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class MissingRating(IncompleteDataError):
    def __init__(self, expert_id, leaf_id):
        self.expert_id, self.leaf_id = expert_id, leaf_id
        super().__init__(f"expert {expert_id!r} did not rate leaf {leaf_id!r}")


class UnknownNode(InputError):
    def __init__(self, node_id, detail=""):
        self.node_id = node_id
        msg = f"unknown or unsuitable node {node_id!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class NoBanding(ParameterError):
    def __init__(self, kind):
        self.kind = kind
        super().__init__(f"no banding configured for metric kind {kind!r}")


class BadGrade(InputError):
    def __init__(self, grade, m):
        super().__init__(f"grade index {grade} outside 1..{m}")


class InvalidHierarchy(InputError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvalidEvaluationSet(InputError):
    pass


class ConsistencyFailure(PcafeError):
    """At least one judgment matrix fails the CR < 0.1 gate (exit code 3)."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(f"{len(self.failures)} matrix(es) fail the CR gate")
