"""qhcalc: exact verification of a q-deformed hyperboloid calculus.

Everything is computed over the exact field Q(q) (or Q at a rational
specialization of q): quadratic-algebra Koszul complexes for Hecke
symmetries, the covariant quantum hyperboloid algebra, its de Rham
complex, tangent modules, braided vector fields, the quantum metric and
a compatible partial connection.  No floating point anywhere.
"""

__version__ = "0.1.0"
