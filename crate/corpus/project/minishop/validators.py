"""Input validation for shop records."""

import re
import warnings

SKU_PATTERN = re.compile(r"^[A-Z]{3}-\d{4}$")
_EMAIL = re.compile(r"^[^@\s]+@[^@\s]+\.[a-z]{2,}$")

COUNTRIES = {"us": "United States", "de": "Germany", "jp": "Japan", "br": "Brazil"}


def validate_sku(sku):
    candidate = sku.strip().upper()
    if not SKU_PATTERN.match(candidate):
        raise ValueError("malformed sku: %r" % sku)
    return candidate

def validate_email(addr):
    if not _EMAIL.match(addr):
        raise ValueError("invalid email address")
    return addr.lower()

def require_positive(label, value):
    if value <= 0:
        raise ValueError("%s must be positive, got %r" % (label, value))
    return value

def normalize_country(code):
    key = code.strip().lower()
    if key not in COUNTRIES:
        raise ValueError("unknown country code: " + code)
    return COUNTRIES[key]

def check_stocked(name, discontinued):
    if name in discontinued:
        warnings.warn(name + " is discontinued", UserWarning)
        return False
    return True
