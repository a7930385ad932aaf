class OrientedMonoidsError(Exception):

    return_code = 1


class DomainError(OrientedMonoidsError, ValueError):

    """Bad input: a point outside the chain, mismatched sizes, etc."""

    return_code = 2


class PreconditionError(DomainError):

    """An endomorphism constructor was called with invalid parameters.

    ``reason`` is a short machine-readable code, e.g. ``"not-idempotent"``
    or ``"variant-needs-even-n"``.

    """

    def __init__(self, reason, message=None):
        self.reason = reason
        self.message = message or reason
        super().__init__(self.message)

    def __str__(self):
        return f"{self.message} [{self.reason}]"


class CapacityError(OrientedMonoidsError):

    pass


class SearchBudgetExceeded(CapacityError):
    def __init__(self, budget, elapsed, found=0):
        self.budget = budget
        self.elapsed = elapsed
        self.found = found
        super().__init__(
            f"Endomorphism search exceeded its budget of {budget:.1f}s "
            f"after {elapsed:.1f}s ({found} found so far)"
        )


class TheoremViolation(OrientedMonoidsError):

    """A computed object contradicts the classification.

    ``images`` holds the offending endomorphism (an index array) when
    there is one so that it can be dumped and re-checked.

    """

    def __init__(self, message, images=None, semigroup=None):
        self.message = message
        self.images = None if images is None else [int(i) for i in images]
        self.semigroup = semigroup
        super().__init__(message)

    def to_json(self):
        obj = {"error": self.message}
        if self.semigroup is not None:
            obj["semigroup"] = self.semigroup.label
            if self.images is not None:
                obj["elements"] = [t.to_json()["map"] for t in self.semigroup]
        if self.images is not None:
            obj["images"] = self.images
        return obj


class CommandError(OrientedMonoidsError):

    return_code = 2


class RunAborted(OrientedMonoidsError):
    def __init__(self, return_code=0, message="Aborted"):
        self.message = message
        self.return_code = return_code
        super().__init__(message, return_code)

    def __str__(self):
        return self.message
