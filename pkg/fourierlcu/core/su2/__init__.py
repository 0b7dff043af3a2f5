"""Continuous Fourier LCU over SU(2) for permutation-invariant unitaries."""
