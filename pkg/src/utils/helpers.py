"""
Helper utility functions for the thermal lab.
"""

import numpy as np

from src.constants import N_BATCHES


def batch_means(values, n_batches=N_BATCHES):
    """
    Mean and standard error of a correlated series by batch means.

    Args:
        values: 1-D sequence of samples
        n_batches (int): Number of equal batches; trailing samples that
            do not fill a batch are dropped from the error estimate only

    Returns:
        tuple: (mean, stderr)
    """
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        return float('nan'), float('nan')
    mean = float(data.mean())
    n_batches = min(n_batches, data.size)
    if n_batches < 2:
        return mean, 0.0
    batch_len = data.size // n_batches
    batches = data[:batch_len * n_batches].reshape(n_batches, batch_len).mean(axis=1)
    stderr = float(batches.std(ddof=1) / np.sqrt(n_batches))
    return mean, stderr
