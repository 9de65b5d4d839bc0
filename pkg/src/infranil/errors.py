"""Exception hierarchy.

Every domain error carries an ``exit_code`` so the command line front end can
map failures onto its documented exit statuses without a lookup table.
"""


class InfranilError(Exception):
    exit_code = 4
    hint = ""


class ParseError(InfranilError):
    """Malformed input document."""

    exit_code = 2
    hint = "check the input document against the canonical format in the README"

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class PreconditionError(InfranilError):
    """The input is valid but outside the domain of the requested computation."""

    exit_code = 3


class NotHyperbolic(PreconditionError):
    hint = "the linear part has an eigenvalue of modulus 1; the period results only cover hyperbolic maps"


class EigenvalueOne(PreconditionError):
    hint = "the asymptotic Nielsen number formula needs 1 not to be an eigenvalue"


class NilpotentInput(PreconditionError):
    hint = "nilpotent linear parts are handled by the nilpotent shortcut (HPer = {1})"


class NotNilpotent(PreconditionError):
    hint = "the nilpotent shortcut only applies when the linear part is nilpotent"


class NotEndomorphism(PreconditionError):
    hint = "the linear part must preserve the Lie bracket: D[x,y] = [Dx,Dy]"


class LieAlgebraError(PreconditionError):
    hint = "structure constants must be antisymmetric, satisfy Jacobi and define a nilpotent algebra"


class NonIntegerAverage(PreconditionError):
    hint = "the holonomy/linear part pair is not realizable as a map of an infra-nilmanifold"


class MissingLfPlus(PreconditionError):
    hint = "an index-2 subgroup needs the cohomology data of the lifted map (fPlusCohomology)"


class InsufficientSequence(PreconditionError):
    hint = "supply Nielsen numbers N(f^1), ..., N(f^k)"


class CertificationError(InfranilError):
    """An internal certificate could not be established."""

    exit_code = 4
    hint = "increase --max-k or --precision; if it persists the input is likely not realizable"


class ValidationFailed(CertificationError):
    pass


class LemmaViolation(CertificationError):
    pass


class ConsistencyError(CertificationError):
    pass
