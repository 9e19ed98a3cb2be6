"""The fixed parameter sets used across the test modules."""

from functools import lru_cache

from leonardkit import GF, QQ, from_parameter_array, instantiate, make_case

F4 = GF(2, [1, 1, 1])
OMEGA = F4.gen

CASES = {
    "I": lambda: make_case("I", QQ, d=4, q=2, h=1, h_star=1, r1=1, r2=32, s=1, s_star=1),
    "I-s*0": lambda: make_case("I", QQ, d=3, q=2, h=1, h_star=1, r1=3, r2=0, s=7, s_star=0),
    "IA": lambda: make_case("IA", QQ, d=4, q=2, h_star=1, r=3, s=5),
    "II": lambda: make_case("II", QQ, d=4, h=1, h_star=1, r1=1, r2=6, s=1, s_star=1),
    "IIA": lambda: make_case("IIA", QQ, d=4, h=1, r=1, s=1, s_star=1),
    "IIB": lambda: make_case("IIB", QQ, d=4, h_star=1, r=1, s=1, s_star=1),
    "IIC": lambda: make_case("IIC", QQ, d=3, r=2, s=1, s_star=1),
    "III-4": lambda: make_case("III", QQ, d=4, h=1, h_star=1, r1=1, r2=6, s=-1, s_star=-1),
    "III-5": lambda: make_case("III", QQ, d=5, h=1, h_star=1, r1=1, r2=3, s=1, s_star=1),
    "IV": lambda: make_case("IV", F4, d=3, h=1, h_star=1, r=OMEGA, s=OMEGA, s_star=OMEGA),
}
NAMES = list(CASES)


@lru_cache(maxsize=None)
def case(name):
    return CASES[name]()


@lru_cache(maxsize=None)
def array(name):
    return instantiate(case(name))


@lru_cache(maxsize=None)
def system(name):
    return from_parameter_array(array(name))


def iic(d, r=2, s=1, s_star=1):
    return make_case("IIC", QQ, d=d, r=r, s=s, s_star=s_star)
