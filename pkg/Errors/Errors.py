class LatticeError(Exception):
    exit_code = 1


class SpecError(LatticeError, ValueError):
    exit_code = 2


class ConvergenceError(LatticeError, RuntimeError):
    exit_code = 3

    def __init__(self, message: str, best_residual: float = float("nan"), iterations: int = 0) -> None:
        super().__init__(f"{message} (best residual {best_residual:.3e} after {iterations} iterations)")
        self.best_residual = best_residual
        self.iterations = iterations


class FitError(LatticeError, RuntimeError):
    exit_code = 3


class BracketError(LatticeError, RuntimeError):
    exit_code = 3


class CacheError(LatticeError, OSError):
    exit_code = 4


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, LatticeError):
        return error.exit_code
    if isinstance(error, ValueError):
        return 2
    if isinstance(error, OSError):
        return 4
    return 1
