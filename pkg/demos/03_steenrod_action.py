"""The Steenrod action on the Dickson algebra, three ways.

st_delta(., i) is the derivation sending each variable to its p^i-th
power.  Its value on a Dickson invariant admits two closed forms besides
the direct Leibniz computation, and the three routes agree exactly:

  direct      Leibniz rule term by term
  via_dl2     one bracket determinant times a power of L_n
  via_main    (-1)^n Q_{n,0} (R^p Q_{n,s} - P^p) in bracket quotients

The script ends on the one place the tabulated composite for i = n + 3
disagrees with all three routes at odd primes, and shows the gap is
exactly a doubled P-term, i.e. one flipped sign.
"""
from dickson import (
    corollary_rhs,
    dickson_Q,
    format_poly,
    frobenius,
    P_coef,
    poly_mul,
    poly_scale,
    poly_sub,
    sign_convention_flag,
    smith_switzer_value,
    st_delta,
    st_delta_via_dl2,
    st_delta_via_main,
    steenrod_P,
    poly_var,
)

p, n = 3, 2
q1 = dickson_Q(n, 1, p)
q0 = dickson_Q(n, 0, p)

print("== reduced powers on small inputs, p = 3 ==")
x1 = poly_var(1, 2, p)
print("P^1(x1)      =", format_poly(steenrod_P(x1, 1)))
print("P^1(x1^2)    =", format_poly(steenrod_P(x1 ** 2, 1)))
print("P^2(x1^2)    =", format_poly(steenrod_P(x1 ** 2, 2)), "  <- top power cubes")

print()
print("== the primitive derivations on Q_{2,1} ==")
print("st_delta(Q_{2,1}, 1) =", format_poly(st_delta(q1, 1)))
print("      that is Q_{2,0}:", st_delta(q1, 1) == q0)
print("st_delta(Q_{2,1}, 2) equals Q_{2,0} Q_{2,1}:",
      st_delta(q1, 2) == poly_mul(q0, q1))
print("sign convention pinned against the classical table:",
      sign_convention_flag() == +1)

print()
print("== three routes, identical answers ==")
for i in range(1, n + 5):
    direct = st_delta(q1, i)
    agree = direct == st_delta_via_dl2(n, 1, i, p) == st_delta_via_main(n, 1, i, p)
    size = len(direct.terms)
    print(f"i = {i}: routes agree = {agree}   ({size} terms)")

print()
print("== classical low range values ==")
for i in range(1, n + 1):
    for s in range(n):
        val = smith_switzer_value(n, s, i, p)
        tag = "0" if val.is_zero() else f"{len(val.terms)} terms"
        ok = st_delta(dickson_Q(n, s, p), i) == val
        print(f"s = {s}, i = {i}: table value {tag:>8}, matches direct: {ok}")

print()
print("== the i = n + 3 composite and its sign slip at odd p ==")
i = n + 3
direct = st_delta(q1, i)
tabulated = corollary_rhs("n+3", n, 1, p)
print("tabulated composite equals the direct action:", tabulated == direct)
gap = poly_sub(tabulated, direct)
pterm = poly_mul(q0, frobenius(P_coef(n, i, 1, p), 1))
doubled = poly_scale(pterm, (2 * (-1) ** n) % p)
print("gap is exactly twice the P contribution:", gap == doubled)
print("so the inner bracket quotients are right and only the sign of the")
print("P-term differs; the verification harness reports this as a flagged")
print("case with a witness monomial instead of silently patching it.")
