"""
tanglekit - Local-unitary invariants of N-qubit pure states from negativity fonts.
"""

__version__ = '0.1.0'
