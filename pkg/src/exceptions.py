"""
Error hierarchy
Every error the simulator raises on purpose derives from SeanError; the CLI maps
the three families to exit codes.
"""

from typing import Optional


class SeanError(Exception):
    """Base class for simulator errors"""

    exit_code = 3


class ConfigError(SeanError, ValueError):
    """Invalid configuration value; always names the key"""

    exit_code = 1

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"config key '{key}': {message}")


class DataError(SeanError, ValueError):
    """Malformed or inconsistent input data"""

    exit_code = 2


class GraphParseError(DataError):
    """Malformed line in an edge file"""

    def __init__(self, path: str, line_number: int, message: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


class UnknownNodeError(DataError):
    """Reference to a user id the graph does not contain"""

    def __init__(self, node: str, context: str = ""):
        self.node = node
        suffix = f" ({context})" if context else ""
        super().__init__(f"unknown user id '{node}'{suffix}")


class CheckpointError(DataError):
    """Unreadable, truncated or corrupted checkpoint"""

    def __init__(self, path: str, message: str, offset: Optional[int] = None):
        self.path = path
        self.offset = offset
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{path}{where}: {message}")


class ConvergenceError(SeanError, RuntimeError):
    """Iterative solver did not reach its tolerance"""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )


class OptimizerError(SeanError, FloatingPointError):
    """Optimizer refused a step"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"parameter '{field}': {message}")
