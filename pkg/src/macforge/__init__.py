"""Minimal additive complements of eventually periodic integer sets."""

from .mac import MacCertificate, Part, VerifyReport, check_certificate, decide_mac, window_oracle
from .setlang import parse, parse_strip, render, render_strip
from .strip import Pattern, StripSet, monomial, project
from .zset import ZSet, use_cap

__all__ = [
    "MacCertificate",
    "Part",
    "Pattern",
    "StripSet",
    "VerifyReport",
    "ZSet",
    "check_certificate",
    "decide_mac",
    "monomial",
    "parse",
    "parse_strip",
    "project",
    "render",
    "render_strip",
    "use_cap",
    "window_oracle",
]
