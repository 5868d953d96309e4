"""Number and unit handling shared by grounding checks and field detection.

Units are compared through a small alias table so that "25 %" / "25%" /
"25 percent" (and "220 Mt" / "220 million tonnes") count as the same
rendered value. Values tolerate thousand separators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

# canonical unit -> accepted surface forms (longest form matched first)
_UNIT_ALIASES: dict[str, tuple[str, ...]] = {
    "%": ("%", "percent", "pct"),
    "Mt CO2": ("Mt CO2", "million tonnes CO2", "million tonnes", "Mt"),
    "t CO2": ("t CO2", "tonnes CO2", "tonnes"),
    "tce/10k CNY": ("tce/10k CNY", "tce per 10,000 CNY", "tce per 10k CNY"),
    "GWh": ("GWh",),
    "MW": ("MW",),
    "km": ("km", "kilometres", "kilometers"),
}

_ALIAS_TO_CANONICAL: dict[str, str] = {}
for _canon, _forms in _UNIT_ALIASES.items():
    for _f in _forms:
        _ALIAS_TO_CANONICAL[_f.casefold()] = _canon

# alias surface forms sorted longest-first so "Mt CO2" wins over "Mt"
_ALL_UNIT_FORMS = sorted(_ALIAS_TO_CANONICAL, key=len, reverse=True)

_NUMBER_RE = re.compile(r"(?<![\w.])(\d{1,3}(?:,\d{3})+|\d+(?:\.\d+)?)(?!\d)")


def canonical_unit(unit: str | None) -> str:
    """Map a unit surface form onto its canonical spelling (unknown units pass through squashed)."""
    if not unit:
        return ""
    squashed = re.sub(r"\s+", " ", unit).strip()
    return _ALIAS_TO_CANONICAL.get(squashed.casefold(), squashed)


def parse_number(token: str) -> float:
    return float(token.replace(",", ""))


def format_value(value: float) -> str:
    """Render a value the way fact rows do: no trailing .0 for integral numbers."""
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


@dataclass(frozen=True)
class NumberMention:
    value: float
    unit: str  # canonical, "" when no unit followed the number
    start: int
    end: int


def extract_numbers(text: str) -> list[NumberMention]:
    """All numeric mentions in ``text`` with any unit that immediately follows."""
    mentions = []
    for m in _NUMBER_RE.finditer(text):
        value = parse_number(m.group(1))
        rest = text[m.end():]
        unit = ""
        end = m.end()
        stripped = rest.lstrip(" ")
        pad = len(rest) - len(stripped)
        for form in _ALL_UNIT_FORMS:
            if stripped.casefold().startswith(form.casefold()):
                after = stripped[len(form):]
                # unit must end at a word boundary ("25 %x" is not a percent)
                if not after or not after[0].isalnum():
                    unit = _ALIAS_TO_CANONICAL[form.casefold()]
                    end = m.end() + pad + len(form)
                    break
        mentions.append(NumberMention(value=value, unit=unit, start=m.start(), end=end))
    return mentions


def values_close(a: float, b: float, rel_tol: float) -> bool:
    if a == b:
        return True
    scale = max(abs(a), abs(b))
    return scale > 0 and abs(a - b) <= rel_tol * scale


def numeric_match(text: str, value: float, unit: str | None, rel_tol: float) -> bool:
    """True when some number in ``text`` equals ``value`` within ``rel_tol``.

    Percent equivalence: with an expected unit of "%", both "25 %" and the
    fraction form "0.25" match an expected 25.
    """
    want_unit = canonical_unit(unit)
    for mention in extract_numbers(text):
        if want_unit and mention.unit and mention.unit != want_unit:
            continue
        if values_close(mention.value, value, rel_tol):
            return True
        if want_unit == "%" and not mention.unit and values_close(mention.value * 100.0, value, rel_tol):
            return True
    return False


def rendered_variants(value: float, unit: str) -> list[str]:
    """Surface renderings of value+unit used for the verbatim-in-source check."""
    value_forms = [format_value(value)]
    if value == int(value):
        iv = int(value)
        if abs(iv) >= 1000:
            value_forms.append(f"{iv:,}")
    else:
        value_forms.append(str(value))
    unit_forms = list(_UNIT_ALIASES.get(canonical_unit(unit), (unit,))) if unit else [""]
    variants = []
    for v in value_forms:
        for u in unit_forms:
            if u:
                variants.append(f"{v} {u}")
                variants.append(f"{v}{u}")
            else:
                variants.append(v)
    return variants


def value_appears_verbatim(text: str, value: float, unit: str) -> bool:
    """The rendered number+unit (allowing alias/space variants) occurs in ``text``."""
    fold = text.casefold()
    return any(v.casefold() in fold for v in rendered_variants(value, unit))


def year_token_present(text: str, year: int) -> bool:
    """Exact standalone 4-digit year match."""
    return re.search(rf"(?<![\d.]){year}(?!\d)", text) is not None
