"""Exception hierarchy shared across the library."""


class G2Error(Exception):
    """Base class for all g2moduli errors."""


# --- field construction / arithmetic ---

class CharTwo(G2Error):
    """Characteristic 2 is not supported."""


class NotPrime(G2Error):
    """Prime-field modulus must be prime."""


class WrongCharacteristic(G2Error):
    """Operation requires a different characteristic."""


class SmallCharacteristic(G2Error):
    """Denominators of the requested expression vanish in this characteristic."""


# --- forms and curves ---

class SingularMatrix(G2Error):
    """GL2 substitution matrix has zero determinant."""


class DegenerateCurve(G2Error):
    """Polynomial does not define a genus-2 curve (bad degree or multiple roots)."""


class NotACurve(G2Error):
    """Invariant vector has J10 = 0, so it comes from no genus-2 curve."""


class ZeroScale(G2Error):
    """Invariant rescaling factor must be nonzero."""


# --- expression derivation / cache ---

class NotAnInvariant(G2Error):
    """Interpolated expression failed fresh-sample verification."""


class DegreeMismatch(G2Error):
    """Target does not scale as an invariant of the stated degree."""


class MissingCache(G2Error):
    """No usable cached expression for this characteristic."""


# --- conics ---

class DegenerateConic(G2Error):
    """Conic matrix is singular."""


class FactorizationLimit(G2Error):
    """Integer factorization exceeded the desk-scale bound."""


class PointNotOnConic(G2Error):
    """Claimed point does not satisfy the conic equation."""


# --- classification / reconstruction ---

class DegenerateDenominator(G2Error):
    """Denominator of the family invariant vanishes at this point."""


class Unsupported(G2Error):
    """Case excluded in this characteristic."""


class WrongGroup(G2Error):
    """Moduli point does not have the automorphism group this path requires."""


class BadParameter(G2Error):
    """Family parameter outside the allowed range."""


class DegenerateOutput(G2Error):
    """Constructed sextic has zero discriminant."""


class VerificationFailed(G2Error):
    """Internal error: reconstructed curve does not match the input moduli point."""
