"""Exception base shared by all modules.

Every error carries the CLI exit code it maps to; invalid input is 2,
internal invariant violations are 5.
"""


class PileKitError(ValueError):
    exit_code = 2

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class InvariantViolation(PileKitError):
    exit_code = 5
