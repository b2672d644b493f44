"""Satake angles, Sato-Tate statistics and explicit error-term bounds for newforms."""
__version__ = "0.1.0"

from .angles import AngleTable, FormParams, PrimeAngle, build_angle_table, theta_from_ap
from .pointcount import CurveParams, ap_elliptic
from .stats import Interval, mu_ST

__all__ = ["AngleTable", "CurveParams", "FormParams", "Interval", "PrimeAngle", "__version__",
           "ap_elliptic", "build_angle_table", "mu_ST", "theta_from_ap"]
