class LabError(Exception):
    pass


class UsageError(LabError, ValueError):
    pass


class ConfigError(UsageError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message

    def __reduce__(self):
        return type(self), (self.field, self.message)


class DomainError(LabError, ValueError):
    pass


class UnsupportedSpaceError(LabError):
    pass


class ContractViolation(LabError):
    pass


class SubordinationViolatedError(LabError):
    pass


class DegenerateInputError(LabError):
    pass


class NotAdmissibleError(LabError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)

    def __reduce__(self):
        return type(self), (self.violations,)
