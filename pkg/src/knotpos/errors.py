"""Exception types raised by the diagram codecs, edits, and engines."""


class KnotError(Exception):
    """Base class for all knotpos errors."""


# -- codecs / validation ------------------------------------------------------

class MalformedSyntax(KnotError):
    pass


class ArcLabelNotTwice(KnotError):
    pass


class InconsistentOrientation(KnotError):
    pass


class NonPlanar(KnotError):
    pass


class UnpairedCrossing(KnotError):
    pass


class NonRealizable(KnotError):
    pass


# -- diagram edits ------------------------------------------------------------

class NoSuchCrossing(KnotError):
    pass


class NegativeCrossing(KnotError):
    pass


class BasepointOffComponent(KnotError):
    pass


class NoValidSite(KnotError):
    pass


class NotInnermost(KnotError):
    pass


class NotOutermost(KnotError):
    pass


class InvalidAlignment(KnotError):
    pass


# -- seifert / signature ------------------------------------------------------

class DisconnectedDiagram(KnotError):
    pass


class TooFewRegions(KnotError):
    pass


class NotReduced(KnotError):
    pass


class NotSAP(KnotError):
    pass


class OmegaEqualsOne(KnotError):
    pass


class UnsupportedOmega(KnotError):
    pass


class VanishingDeterminant(KnotError):
    pass


# -- positivity ---------------------------------------------------------------

class TooManyComponents(KnotError):
    pass


class NotWeaklyPositive(KnotError):
    pass


class NotWSAP(KnotError):
    pass


class NoPositiveCrossing(KnotError):
    pass


# -- engines / reports --------------------------------------------------------

class ResourceLimit(KnotError):
    pass


class NotFlaggedSharp(KnotError):
    pass
