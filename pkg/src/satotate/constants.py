"""Registry of the explicit numerical constants used by the bound evaluators."""
import math
from dataclasses import asdict, dataclass

EULER_GAMMA = 0.5772156649015329
SIGMA0 = (1 + math.sqrt(5)) / 2
SIGMA1 = 1.5

# classical prime-counting inputs
THETA_RATIO = 1.0 / 36260          # theta(x) < (1 + 1/36260) x
THETA_DEV = 1.2323                 # |theta(x) - x| < 1.2323 x / log x
LI_DEV = 0.2795                    # |pi(x) - li(x)| < 0.2795 x (log x)^(-3/4) exp(-sqrt(log x / 6.455))
LI_DEV_SCALE = 6.455
PI_CONVERSION = 1.000015           # 1.000015 * c99 <= c100


@dataclass(frozen=True)
class ConstantsRegistry:
    c100: float = 58.1
    c99: float = 58.084
    c60: float = 1.2323
    zfr1: float = 1.721
    zfr2: float = 3.158
    zfr3: float = 1.214
    zfr4: float = 11.63
    zfr5: float = 0.1435
    b1: float = 2.753
    b2: float = 3.1968
    new1: float = 3.893
    new2: float = 4.337
    b4: float = 15.998
    b100: float = 17555.0
    b130: float = 31.996
    b9: float = 6.999
    b14: float = 126.725
    b19: float = 140.945
    c101: float = 3.015
    c233: float = 1.114
    c220: float = 0.753
    c303: float = 0.593
    c310: float = 56.662
    res32: float = 1.1943
    reslast: float = 8.6705

    def as_dict(self):
        return asdict(self)

    def items(self):
        return self.as_dict().items()


REGISTRY = ConstantsRegistry()

# Values stated alongside the table that differ from it; kept for reporting.
NOTES = {
    "b14": "proof text states 126.416; the table value 126.725 is stored",
    "zfr4": "defined with the bound > 11.62 but tabulated as 11.63",
    "c101*(c100+4/pi)": "evaluates to about 179.011 with the tabulated values; 179 is used",
}


def closed_forms():
    """Closed-form values that several table entries round."""
    return {
        "zfr5": 2 * (2 - math.sqrt(3)) ** 2,
        "zfr3": 2 / math.sqrt(math.e),
        "zfr1": math.log(math.pi) + EULER_GAMMA,
        "b4": 4.5 + math.sqrt(5) * (2 + math.pi),
        "b1": 11 / 6 + 0.5 * math.log(2 * math.pi),
        "b2": 41 / 18 + 0.5 * math.log(2 * math.pi),
        "sigma0": SIGMA0,
    }


# Direction in which a table entry may safely round its closed form:
# 'down' where the constant appears as a lower bound, 'up' where it enters as an upper bound.
ROUNDING_DIRECTION = {"zfr5": "down", "zfr3": "up", "zfr1": "down", "b4": "up",
                      "b1": "up", "b2": "up"}


def table_rows(reg=REGISTRY):
    """``(name, value)`` rows in registry order plus the auxiliary inputs."""
    rows = list(reg.items())
    rows += [("sigma0", SIGMA0), ("sigma1", SIGMA1), ("theta_ratio", THETA_RATIO),
             ("theta_dev", THETA_DEV), ("li_dev", LI_DEV), ("li_dev_scale", LI_DEV_SCALE)]
    return rows
