"""Exception hierarchy shared across the package.

Each class carries a short machine-readable ``code`` used by the CLI to pick
exit codes and by tests to assert on failure kinds without string matching.
"""


class SemiresError(Exception):
    code = "error"


class InputError(SemiresError):
    """Malformed or out-of-contract input (CLI exit code 2)."""

    code = "input-error"


class UnsupportedError(SemiresError):
    """Operation outside its supported scope (non-acyclic quiver, rationals
    where decomposition is needed, and so on)."""

    code = "unsupported"

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class CertificateFailure(SemiresError):
    """An internal certificate that must hold failed to verify (CLI exit 3).

    This always indicates a bug or a genuinely broken construction; it is
    never raised for ordinary negative verdicts. A more specific code may
    be attached when one exists.
    """

    code = "certificate-failure"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class NotFoundWithinBound(SemiresError):
    """Bounded search exhausted without a certified result."""

    code = "resolution-not-found-within-bound"


class DoesNotSplit(SemiresError):
    """A required exact sequence admits no splitting."""

    code = "sequence-does-not-split"


class Inconclusive(SemiresError):
    """Randomized search exhausted its retry budget without a certificate
    either way. Reported as unknown, never as a definite no."""

    code = "inconclusive"
