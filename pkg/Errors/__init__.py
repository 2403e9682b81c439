from Errors.Errors import LatticeError, SpecError, ConvergenceError, FitError, BracketError, CacheError, exit_code_for
