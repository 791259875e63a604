"""Price arithmetic: tax, coupons, tiered discounts."""

import re
import warnings

DEFAULT_TAX_RATE = 0.0825

_COUPON = re.compile(r"^SAVE(\d{2})$")


def tax(amount, rate=DEFAULT_TAX_RATE):
    if amount < 0:
        raise ValueError("amount cannot be negative")
    return amount * rate

def with_tax(amount, rate=DEFAULT_TAX_RATE):
    return amount + tax(amount, rate)

def apply_coupon(price, code):
    """SAVEnn coupons take nn percent off; FREESHIP leaves the price alone."""
    if code == "FREESHIP":
        return price
    m = _COUPON.match(code)
    if m is None:
        raise ValueError("invalid coupon code: " + code)
    return price * (1 - int(m.group(1)) / 100)

def tiered_discount(subtotal):
    if subtotal >= 500:
        return 0.10
    if subtotal >= 100:
        return 0.05
    return 0.0

def split_even(total, ways):
    if ways <= 0:
        raise ValueError("ways must be positive")
    cents = round(total * 100)
    base, leftover = divmod(cents, ways)
    shares = [base + 1] * leftover + [base] * (ways - leftover)
    return [s / 100 for s in shares]

def unit_price(total, qty):
    return total / qty

def legacy_total(prices):
    warnings.warn("legacy_total is deprecated; use sum()", DeprecationWarning)
    return sum(prices)
