# The matrix families B, C, V and their exact ranks
#
# Rank is a lower bound for nonnegative rank, and for these small matrices
# it is already informative.  Elimination is fraction-free and exact.

from fractions import Fraction

from nnrank import M1, build_B, build_C, build_V, det, rank, submatrix

V = build_V()
for row in V.tolist():
    print(" ".join(str(x) for x in row))
print("rank V =", rank(V), " det V =", det(V))

# B with unequal parameters has full row rank 5, with equal ones only 4.
print("rank B(1/3, 1/2) =", rank(build_B(Fraction(1, 3), Fraction(1, 2))))
print("rank B(1/3, 1/3) =", rank(build_B(Fraction(1, 3), Fraction(1, 3))))

# C always contains the same 3x3 minor of determinant -1, whatever the
# parameters are, so its rank is at least 3.
C = build_C(0, 0, 0, 0, 0)
print("det C(2,3,4|1,2,3) =", det(submatrix(C, (2, 3, 4), (1, 2, 3))))

# At a rational parameter point C has rank >= 4 ...
print("rank C(1,1,1,1,1) =", rank(build_C(1, 1, 1, 1, 1)))
# ... but at a = b = c = alpha, d = sqrt 2 it drops to 3.
print("rank M1 =", rank(M1()), "over", M1().field)
