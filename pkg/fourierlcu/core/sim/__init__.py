"""Exact statevector and density-matrix simulation.

Amplitudes are stored little-endian: bit ``q`` of an amplitude index is qubit ``q``.
"""
