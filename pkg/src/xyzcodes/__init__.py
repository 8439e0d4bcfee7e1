"""XYZ-product and homological-product stabilizer codes.

Construction and verification of 3D/4D product codes from classical seed
codes, plus logical-error-rate estimation under biased Pauli noise with a
belief-propagation + ordered-statistics decoder.
"""

__version__ = "0.1.0"
