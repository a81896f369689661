from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """Outcome of a law check: truthy iff every instance held.

    ``failure`` names the first violated law and ``witness`` the instance
    (smallest in lexicographic order wherever the checker enumerates).
    """

    ok: bool
    failure: str = ""
    witness: tuple = ()
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls, **details):
        return cls(True, details=details)

    @classmethod
    def failed(cls, failure, *witness, **details):
        return cls(False, failure, tuple(witness), details)


def first_failure(checks):
    for c in checks:
        if not c:
            return c
    return Check.passed()
