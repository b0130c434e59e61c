"""Cleaning configuration and its JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from .errors import ConfigError
from .masking import MaskPolicy

TRANSFORM_NAMES = (
    "strip_html",
    "mask_urls",
    "mask_emails",
    "normalize_digits",
    "mask_phones",
    "strip_tatweel",
    "normalize_hamza",
    "strip_parentheticals",
    "remove_slash_hyphen",
    "normalize_punctuation",
    "collapse_elongation",
    "remove_noisy",
)

# phone masking needs ASCII digits, so normalize_digits is hoisted ahead of it
DEFAULT_ORDER = TRANSFORM_NAMES

DEFAULT_KEPT_PUNCTUATION = frozenset({"!", ".", "؟"})


@dataclass(frozen=True)
class CleanConfig:
    mask: MaskPolicy = field(default_factory=MaskPolicy)
    kept_punctuation: frozenset[str] = DEFAULT_KEPT_PUNCTUATION
    preserve_emoji: bool = True
    max_run: int = 2
    transform_order: tuple[str, ...] = DEFAULT_ORDER

    def __post_init__(self):
        object.__setattr__(self, "kept_punctuation", frozenset(self.kept_punctuation))
        object.__setattr__(self, "transform_order", tuple(self.transform_order))
        if not isinstance(self.max_run, int) or self.max_run < 1:
            raise ConfigError(f"max_run must be a positive integer, got {self.max_run!r}")
        unknown = [n for n in self.transform_order if n not in TRANSFORM_NAMES]
        if unknown:
            raise ConfigError(f"unknown transforms: {unknown}")
        if len(set(self.transform_order)) != len(self.transform_order):
            raise ConfigError("transform_order lists a transform twice")
        if any(len(p) != 1 for p in self.kept_punctuation):
            raise ConfigError("kept_punctuation entries must be single characters")

    @property
    def enabled_transforms(self) -> tuple[str, ...]:
        skip = set()
        if not self.mask.strip_html:
            skip.add("strip_html")
        if not self.mask.strip_parentheticals:
            skip.add("strip_parentheticals")
        return tuple(n for n in self.transform_order if n not in skip)

    def to_dict(self) -> dict:
        return {
            "mask": asdict(self.mask),
            "kept_punctuation": sorted(self.kept_punctuation),
            "preserve_emoji": self.preserve_emoji,
            "max_run": self.max_run,
            "transform_order": list(self.transform_order),
        }

    @classmethod
    def from_dict(cls, data: dict) -> CleanConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        allowed = {f.name for f in fields(cls)}
        extra = set(data) - allowed
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        kwargs = dict(data)
        if "mask" in kwargs:
            mask = kwargs["mask"]
            mask_fields = {f.name for f in fields(MaskPolicy)}
            if not isinstance(mask, dict) or set(mask) - mask_fields:
                raise ConfigError(f"mask must be an object with keys from {sorted(mask_fields)}")
            kwargs["mask"] = MaskPolicy(**mask)
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, raw: bytes | str) -> CleanConfig:
        try:
            data = json.loads(raw)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        return cls.from_dict(data)
