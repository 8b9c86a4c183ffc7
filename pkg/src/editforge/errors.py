"""Exception types raised across the package."""

from __future__ import annotations


class EditForgeError(Exception):
    """Base class for all package-specific errors."""


# -- scene construction ------------------------------------------------------


class CatalogTooSmall(EditForgeError):
    pass


class CameraSearchExhausted(EditForgeError):
    pass


# -- edit operations ---------------------------------------------------------


class OpError(EditForgeError):
    """An edit operation could not be applied to the given scene."""


class TargetMissing(OpError):
    pass


class AnchorMissing(OpError):
    pass


class TargetIsSupporter(OpError):
    pass


class LabelNotNovel(OpError):
    pass


class NoFreePosition(OpError):
    pass


class CollisionAfterRotation(OpError):
    pass


class CollisionAfterScale(OpError):
    pass


class SameColor(OpError):
    pass


class SameMaterial(OpError):
    pass


class SameTexture(OpError):
    pass


class VisibilityBroken(OpError):
    pass


class BadOpParams(OpError):
    pass


# -- chain composition -------------------------------------------------------


class NoFeasibleOp(EditForgeError):
    pass


class CompositionExhausted(EditForgeError):
    pass


class NoEligibleReference(EditForgeError):
    pass


class BadK(EditForgeError):
    pass


# -- instruction text --------------------------------------------------------


class MissingSlot(EditForgeError):
    pass


class UnresolvableReference(EditForgeError):
    pass


class AmbiguousReference(EditForgeError):
    pass


# -- guidance engine ---------------------------------------------------------


class BadWindow(EditForgeError):
    pass


class NonFiniteVelocity(EditForgeError):
    pass


class Diverged(EditForgeError):
    pass


# -- evaluation / judge ------------------------------------------------------


class JudgeUnavailable(EditForgeError):
    pass


class MalformedJudgeReply(EditForgeError):
    pass


class DigestMismatch(EditForgeError):
    pass


class ConfigInvalid(EditForgeError):
    pass
