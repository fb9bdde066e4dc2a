# Exact arithmetic in Q(sqrt 2)
#
# Every irrational number that shows up in the factorization of A lives in
# Q(sqrt 2): sqrt2 itself and alpha = 1 + sqrt(1/2).  QuadraticNumber keeps
# a + b*sqrt(2) with rational a, b, so sums, products and signs are exact.

from fractions import Fraction

from nnrank import QUADRATIC2, QuadraticNumber, alpha, parse_scalar, quad_sign, sqrt2

a = alpha()
print("alpha       =", a)                  # 1+1/2*sqrt(2)
print("sqrt2^2     =", sqrt2() * sqrt2())  # 2+0*sqrt(2)

# The coefficient that makes the 3-factor certificate for M1 work:
# (2 - sqrt2) * alpha is exactly one.
print("(2-sqrt2)*alpha =", (2 - sqrt2()) * a)

# Signs are decided by comparing a^2 with 2 b^2, never by rounding.
# 99/70 sits within 1e-4 of sqrt 2 and still gets a definite sign.
for x in (2 - a, QuadraticNumber(1, -1), QuadraticNumber(Fraction(99, 70), -1)):
    print(f"sign({x}) = {quad_sign(x):+d}")

# Text form round-trips, which is what the JSON files use.
s = str(a)
print(s, "->", parse_scalar(s, QUADRATIC2) == a)
