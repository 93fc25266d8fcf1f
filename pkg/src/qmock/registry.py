"""Built-in identity registry.

Every entry is written with the theta shorthands ``T(a,m)``, ``Tb(a,m)`` and
``E(m)`` the way the identity is usually printed, not as expanded products.
"""
from __future__ import annotations

from .dsl import IdentitySpec
from .mock import APPELL_FORMS, MOCK_NAMES

_OMEGA = "(w - w^2)"


def _spec(name, lhs, rhs, tags, order=100, K=12, valence=None):
    return IdentitySpec(name, lhs, rhs, order, K, tuple(tags), valence)


def _tenth():
    rows = [
        ("q^2*phi10(q^9) - (psi10(w*q) - psi10(w^2*q))/" + _OMEGA,
         "-q*T(1,2)/T(3,6)*T(3,15)*E(6)/E(3)", 3),
        ("q^(-2)*psi10(q^9) + (w*phi10(w*q) - w^2*phi10(w^2*q))/" + _OMEGA,
         "T(1,2)/T(3,6)*T(6,15)*E(6)/E(3)", 3),
        ("X10(q^9) - (w*chi10(w*q) - w^2*chi10(w^2*q))/" + _OMEGA,
         "Tb(1,4)/Tb(3,12)*T(18,30)*E(3)/E(6)", 3),
        ("chi10(q^9) + q^2*(X10(w*q) - X10(w^2*q))/" + _OMEGA,
         "-q^3*Tb(1,4)/Tb(3,12)*T(6,30)*E(3)/E(6)", 3),
        ("phi10(q) - q^(-1)*psi10(-q^4) + q^(-2)*chi10(q^8)",
         "Tb(1,2)*theta(-q^2; -q^10)/T(2,8)", 2),
        ("psi10(q) + q*phi10(-q^4) + X10(q^8)",
         "Tb(1,2)*theta(-q^6; -q^10)/T(2,8)", 2),
    ]
    return [_spec(f"tenth-{i}", lhs, rhs, ["tenth"], K=K) for i, (lhs, rhs, K) in enumerate(rows, 1)]


def _sixth():
    return [
        _spec("sixth-A", "phi6(q^9) - psi6(q) - q^(-3)*psi6(q^9)",
              "Tb(3,12)*E(6)^2/(Tb(1,4)*Tb(9,36))", ["sixth"], 120, 2),
        _spec("sixth-B", "(psi6(w*q) - psi6(w^2*q))/(" + _OMEGA + "*q)",
              "Tb(1,4)*Tb(9,36)*T(3,6)/(Tb(3,12)*E(6))", ["sixth"], 120, 3),
        _spec("new-sixth-1", "q*rho6(q) + q^3*rho6(q^9) - 2*sigma6(q^9)",
              "q*T(3,6)*E(3)^2/(T(1,2)*T(9,18))", ["sixth", "new-sixth"], 120, 2),
        _spec("new-sixth-2", "q*lambda6(q) + q^3*lambda6(q^9) - 2*mu6(q^9)",
              "-T(3,6)*E(6)^2/(Tb(1,4)*Tb(9,36))", ["sixth", "new-sixth"], 120, 2),
        _spec("new-sixth-3", "psibar6(q) + q^(-3)*psibar6(q^9) - phibar6(q^9)",
              "q*Tb(3,12)*E(3)^2/(T(1,2)*T(9,18))", ["sixth", "new-sixth"], 120, 2),
    ]


_THM2 = [
    ("B", [
        ("q*B2(q) - 2*A2(-q^4)", "q*E(2)/E(1)^2*E(4)^5*E(16)^2/E(8)^5"),
        ("q*B2(q) + 1/2*mu2(q^4)", "1/2*E(2)/E(1)^2*E(4)^3*E(8)/E(16)^2"),
        ("q*B2(q) + 1/4*mu2(q^4) - A2(-q^4)", "1/4*E(2)^6/E(1)^4*E(4)^3/E(8)^4"),
    ]),
    ("rho", [
        ("q*rho6(q) - 2*A2(-q^6)", "q*E(2)^2*E(3)^2*E(6)*E(8)*E(24)/(E(1)^2*E(4)*E(12)^3)"),
        ("q*rho6(q) + 1/2*mu2(q^6)", "1/2*E(2)*E(3)^2*E(4)^2/(E(1)^2*E(8)*E(24))"),
        ("q*rho6(q) + 1/4*mu2(q^6) - A2(-q^6)", "1/4*E(2)^6*E(3)^4/(E(1)^4*E(4)^2*E(6)*E(12)^2)"),
    ]),
    ("lambda", [
        ("q/2*lambda6(q) + 2*A2(-q^6)",
         "q/2*E(1)*E(3)*E(4)^5*E(6)^3*E(24)^2/(E(2)^4*E(8)^2*E(12)^5)"),
        ("q/2*lambda6(q) - 1/2*mu2(q^6)", "-1/2*E(1)*E(3)*E(6)*E(8)^2*E(12)/(E(2)^2*E(4)*E(24)^2)"),
        ("q/2*lambda6(q) - 1/4*mu2(q^6) + A2(-q^6)", "-1/4*E(1)^2*E(3)^2*E(4)*E(6)^2/(E(2)^3*E(12)^3)"),
    ]),
    ("Rphi", [
        ("2*phiR(q) - 2*A2(-q^2)", "2*q*E(2)^7*E(8)^4/(E(1)^4*E(4)^6)"),
        ("2*phiR(q) + 1/2*mu2(q^2)", "1/2*E(2)^3*E(4)^6/(E(1)^4*E(8)^4)"),
        ("2*phiR(q) + 1/4*mu2(q^2) - A2(-q^2)", "1/4*E(2)^17/(E(1)^8*E(4)^8)"),
    ]),
    ("Rxi", [
        ("1/2*xiR(q) + 2*A2(-q)", "1/4*E(1)^5/E(2)^4"),
        ("1/2*xiR(q) - 1/2*mu2(q)", "-1/4*E(1)^5/E(2)^4"),
        ("1/2*xiR(q) - 1/4*mu2(q) + A2(-q)", "0"),
    ]),
    ("psi", [
        ("psi6(q) - U0(q^3)", "-E(1)*E(6)^4*E(8)^2*E(12)/(E(2)^2*E(3)^2*E(4)*E(24)^2)"),
        ("psi6(q) + 2*U1(q^3)", "q*E(1)*E(4)^5*E(6)^6*E(24)^2/(E(2)^4*E(3)^2*E(8)^2*E(12)^5)"),
        ("2*psibar6(q) + U0(q^3)", "E(2)*E(4)^2*E(6)^3/(E(1)^2*E(3)*E(8)*E(24))"),
        ("2*psibar6(q) - 2*U1(q^3)", "2*q*E(2)^2*E(6)^4*E(8)*E(24)/(E(1)^2*E(3)*E(4)*E(12)^3)"),
    ]),
]


def _thm2():
    out = []
    for family, rows in _THM2:
        for i, (lhs, rhs) in enumerate(rows, 1):
            out.append(_spec(f"thm-{family}-{i}", lhs, rhs, ["thm2", f"thm-{family}"], 120, 2))
    return out


_LEMMA41 = [
    ("D3(1; -q; -q^9; q^3)",
     "E(9)^3/(Tb(1,3)*Tb(9,27)*Tb(0,9))*(q*T(1,9)*T(6,27)/Tb(1,9) - q^2*T(4,9)*T(3,27)/Tb(4,9)"
     " - T(7,9)*T(12,27)/Tb(7,9))"),
    ("D3(1; q; q^9; q^6)",
     "-E(18)^3/(T(1,6)*T(9,54)*T(9,18))*(q^2*T(10,18)*T(6,54)/T(1,18) + q^3*T(16,18)*T(12,54)/T(7,18)"
     " + T(4,18)*T(30,54)/T(13,18))"),
    ("D3(1; -q^2; -q^27; q^6)",
     "E(18)^3/(Tb(2,6)*Tb(27,54)*Tb(9,18))*(q^2*T(11,18)*T(21,54)/Tb(2,18)"
     " + q^10*T(17,18)*T(3,54)/Tb(8,18) + q^4*T(5,18)*T(15,54)/Tb(14,18))"),
    ("D3(1; -q; -1; q^6)",
     "E(18)^3/(Tb(1,6)*Tb(0,54)*Tb(0,18))*(q^(-1)*T(1,18)*T(3,54)/Tb(1,18)"
     " + q^(-6)*T(7,18)*T(21,54)/Tb(7,18) + q^(-5)*T(13,18)*T(39,54)/Tb(13,18))"),
    ("D3(1; q; -1; q^3)",
     "-E(9)^3/(E(1)*Tb(0,27)*Tb(0,9))*(q^(-1)*Tb(1,9)*Tb(3,27)/T(1,9)"
     " - q^(-3)*Tb(4,9)*Tb(12,27)/T(4,9) + q^(-2)*Tb(7,9)*Tb(21,27)/T(7,9))"),
]

# Levels for the valence-bound mode; each is a level on which every normalized
# summand passes the modularity gate (see valence.py).
_PROP42 = [
    ("Tb(3,12)*E(6)^2/(Tb(1,4)*Tb(9,36))",
     "-D3(1; -q; -q^9; q^3) + E(27)^3*E(9)^2/(Tb(0,27)*Tb(9,27)^3)", 216),
    ("q*T(3,6)*E(3)^2/(T(1,2)*T(9,18))",
     "-D3(1; q; q^9; q^6) - E(54)^3*T(18,54)^2/(T(9,54)^3*T(27,54))", 54),
    ("-T(3,6)*E(6)^2/(Tb(1,4)*Tb(9,36))",
     "D3(1; -q^2; -q^27; q^6) + D3(1; -q; -1; q^6)"
     " + q^12*E(54)^3*T(9,54)^2/(Tb(27,54)^2*Tb(18,54)^2)"
     " - q^(-6)*E(54)^3*T(9,54)^2/(Tb(0,54)^2*Tb(9,54)^2)", 216),
    ("2*q*Tb(3,12)*E(3)^2/(T(1,2)*T(9,18))",
     "-D3(1; q; -1; q^3) + q*E(6)^3/(E(1)*E(2)) + 2*q^9*Tb(27,108)^3/(E(9)*Tb(9,36))"
     " - 2*E(27)^3*Tb(9,27)^2/(E(9)^2*Tb(0,27)*Tb(9,27)) + q^6*E(54)^3/(E(9)*E(18))"
     " + q^(-3)*E(27)^3*Tb(9,27)^2/(E(9)^2*Tb(0,27)^2)", 216),
]

_PROP5 = [
    ("D2(1; q^3; q^8; q^4)", "-q*E(2)*E(4)^5*E(16)^2/(E(1)^2*E(8)^5)"),
    ("D2(1; q^3; q^12; q^4)", "-1/2*E(2)*E(4)^3*E(8)/(E(1)^2*E(16)^2)"),
    ("D2(1; q; q^12; q^6)", "-q*E(2)^2*E(3)^2*E(6)*E(8)*E(24)/(E(1)^2*E(4)*E(12)^3)"),
    ("D2(1; q; q^18; q^6)", "-1/2*E(2)*E(3)^2*E(4)^2/(E(1)^2*E(8)*E(24))"),
    ("D2(1; -q^2; q^12; q^6)", "q^2*E(2)*E(6)^2*E(24)^3/(E(8)*E(12)^4)"),
    ("D2(1; -q; q^12; q^6)", "q*E(1)^2*E(4)*E(6)^7*E(8)*E(24)/(E(2)^4*E(3)^2*E(12)^5)"),
    ("D2(1; -q^2; -1; q^6)", "-E(2)*E(12)^4*E(16)^2*E(24)/(E(4)^2*E(6)^2*E(8)*E(48)^2)"),
    ("D2(1; q; q^4; q^2)", "-2*q*E(2)^7*E(8)^4/(E(1)^4*E(4)^6)"),
    ("D2(1; q; q^(-2); q^2)", "-1/2*E(2)^3*E(4)^6/(E(1)^4*E(8)^4)"),
    ("D2(1; -1; q^2; q)", "1/4*E(1)^5/E(2)^4"),
    ("D2(1; -1; q^(-1); q)", "-1/4*E(1)^5/E(2)^4"),
    ("D2(1; -q; -1; q^3)", "-E(1)*E(6)^4*E(8)^2*E(12)/(E(2)^2*E(3)^2*E(4)*E(24)^2)"),
    ("D2(1; -q; -q^6; q^3)", "q*E(1)*E(4)^5*E(6)^6*E(24)^2/(E(2)^4*E(3)^2*E(8)^2*E(12)^5)"),
]

_LEMMA5 = [
    ("1/2*E(2)*E(8)^5*E(12)^5*E(48)/(E(4)^3*E(6)^3*E(16)^3*E(24)^3)"
     " + 1/2*E(4)^4*E(24)^4/(E(2)*E(6)*E(8)^2*E(12)^2*E(16)*E(48)) - 1", "0"),
    ("1/2*E(1)*E(4)^5*E(6)^5*E(24)/(E(2)^3*E(3)^3*E(8)^3*E(12)^3)"
     " + 1/2*E(2)^4*E(12)^4/(E(1)*E(3)*E(4)^2*E(6)^2*E(8)*E(24)) - 1", "0"),
    ("E(1)*E(6)^4*E(8)^3/(E(3)^3*E(4)^4*E(24)) + q*E(2)^5*E(8)*E(12)*E(24)/(E(1)*E(3)*E(4)^5*E(6)) - 1",
     "0"),
    ("E(1)^2*E(4)^4*E(6)*E(12)^2/(E(2)^5*E(3)^2*E(8)*E(24))"
     " + 2*q*E(1)^2*E(4)*E(6)^2*E(8)*E(24)/(E(2)^4*E(3)^2*E(12)) - 1", "0"),
    ("E(1)*E(6)^4*E(8)^3/(E(3)^3*E(4)^4*E(24)) + q*E(2)^5*E(8)*E(12)*E(24)/(E(1)*E(3)*E(4)^5*E(6)) - 1",
     "0"),
    ("E(2)^3*E(12)^3*E(16)^2*E(24)^3/(E(1)*E(3)*E(4)*E(6)^3*E(8)^3*E(48)^2)"
     " - q*E(4)^2*E(12)^4*E(48)/(E(3)^2*E(6)^2*E(8)^2*E(24))"
     "*(T(1,12)*T(20,48)/(T(5,12)*T(2,24)) + q^4*T(5,12)*T(4,48)/(T(1,12)*T(10,24))) - 1", "0"),
    ("q*E(4)^4*E(6)*E(24)^2/(E(1)*E(2)*E(3)*E(8)^2*E(12)^2)"
     " - E(2)*E(8)^2*E(12)^4/(E(1)*E(3)*E(4)^2*E(6)*E(24)^2) + 1", "0"),
    ("4*q*E(1)^4*E(4)^2*E(8)^4/E(2)^10 + E(1)^4*E(4)^14/(E(8)^4*E(2)^14) - 1", "0"),
    ("E(1)^2*E(6)^3*E(8)^2*E(12)^3/(E(2)^3*E(3)^2*E(4)^3*E(24)^2)"
     " + 2*q*E(1)*E(3)*E(8)*E(24)/(E(2)^2*E(4)^2) - 1", "0"),
    ("q*E(1)^2*E(4)^3*E(6)^5*E(24)^2/(E(2)^5*E(3)^2*E(8)^2*E(12)^3)"
     " + E(1)*E(3)*E(4)*E(12)^3/(E(2)^3*E(6)*E(8)*E(24)) - 1", "0"),
    ("Tb(8,12)*Tb(4,24)/Tb(2,12) + Tb(2,12)*Tb(16,24)/Tb(8,12)",
     "2*E(6)^2*E(16)^2/(E(4)*E(8)*E(12))"),
]


def _supporting():
    out = []
    for i, (lhs, rhs) in enumerate(_LEMMA41, 1):
        out.append(_spec(f"lemma41-{i}", lhs, rhs, ["lemma41", "D3-eval"], 100, 2))
    for i, (lhs, rhs, level) in enumerate(_PROP42, 1):
        out.append(_spec(f"prop42-{i}", lhs, rhs, ["prop42", "valence"], 120, 2, level))
    for i, (lhs, rhs) in enumerate(_PROP5, 1):
        out.append(_spec(f"prop5x-{i}", lhs, rhs, ["prop5x", "D2-eval"], 100, 2))
    for i, (lhs, rhs) in enumerate(_LEMMA5, 1):
        out.append(_spec(f"lemma5-theta-{i}", lhs, rhs, ["lemma5-theta", "theta"], 100, 2))
    return out


def _appell_forms():
    return [_spec(f"appell-form-{i}", f"{name}(q)", APPELL_FORMS[name][0], ["appell-form", name], 100, 2)
            for i, name in enumerate(MOCK_NAMES, 1)]


REGISTRY: tuple[IdentitySpec, ...] = tuple(
    _tenth() + _sixth() + _thm2() + _supporting() + _appell_forms())

BY_NAME = {s.name: s for s in REGISTRY}
