"""Weak-key detection, recovery and counting for prime-order EC groups.

A private key alpha is weak when its multiplicative order modulo the group
order p divides a small d | p - 1; such keys fall to an O(sqrt(d)) search
done entirely with group exponentiations.
"""

__version__ = "0.1.0"
