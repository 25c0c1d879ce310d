"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and the process exit
status the CLI should use when it escapes a command.
"""


class F1Error(Exception):
    code = "error"
    exit_status = 1


class InputError(F1Error):
    code = "input_error"
    exit_status = 2


class ParseError(InputError):
    code = "parse_error"

    def __init__(self, message, line=None, column=None, path=None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path:
            where.append(path)
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ValidationError(InputError):
    code = "validation_error"


class BoundError(F1Error):
    code = "bound_error"
    exit_status = 3


class BoundTooSmall(BoundError):
    code = "bound_too_small"


class BoundExceeded(BoundError):
    code = "bound_exceeded"


class SaturationIncomplete(BoundError):
    code = "saturation_incomplete"


class CapExceeded(BoundError):
    code = "cap_exceeded"


class NotAMonoidMorphism(F1Error):
    code = "not_a_monoid_morphism"


class NotAMorphism(F1Error):
    code = "not_a_morphism"


class NotTorsionFree(F1Error):
    code = "not_torsion_free"

    def __init__(self, message, values=None, witness=None):
        super().__init__(message)
        self.values = values or {}
        self.witness = witness


class GluingInconsistent(F1Error):
    code = "gluing_inconsistent"
