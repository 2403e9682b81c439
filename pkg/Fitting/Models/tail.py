import numpy as np


def tail_decay(x: np.ndarray, y: np.ndarray) -> float:
    """Minus the slope of log(y) against x over the upper half of the points."""
    tail = slice(len(x) // 2, None)
    xs, ys = x[tail], y[tail]
    positive = ys > 0
    if positive.sum() < 2:
        return 0.0
    slope, _ = np.polyfit(xs[positive], np.log(ys[positive]), 1)
    return float(-slope)
