"""Exception hierarchy shared by all skeinlab modules.

Errors are split into two categories so the CLI can map them to exit
codes: ``usage`` errors (malformed input files, bad flags) exit with 2,
``domain`` errors (valid input, impossible computation) exit with 1.
"""


class SkeinlabError(Exception):
    category = "domain"


class UsageError(SkeinlabError):
    category = "usage"


class ParseError(UsageError):
    """Input text does not match the expected syntax."""


class TopologyError(UsageError):
    """A diagram's combinatorics are inconsistent (edge labels, tracing)."""


class StrandMismatch(SkeinlabError):
    """Two Temperley-Lieb elements with different strand counts were combined."""


class OpenSkein(SkeinlabError):
    """A Kauffman bracket was requested for a skein element with boundary."""


class Inadmissible(SkeinlabError):
    """A spin-network coloring violates the admissibility condition."""


class SingularEvaluation(SkeinlabError):
    """A reduced denominator vanishes at the requested evaluation point."""

    def __init__(self, message, vanishing_factor=None):
        super().__init__(message)
        self.vanishing_factor = vanishing_factor


class TooLarge(SkeinlabError):
    """The computation exceeds the configured crossing cap."""


class AlignmentFailed(SkeinlabError):
    """No grading shift aligns the members of a homology sequence."""


class HypothesisViolated(SkeinlabError):
    """A reduction needed a move outside the triangle-move hypothesis."""


class NonPlanar(SkeinlabError):
    """A trivalent graph has no planar embedding (Euler check failed)."""
