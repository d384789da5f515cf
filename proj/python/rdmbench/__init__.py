"""Python bindings of the rdm research data workbench."""

from ._rdmbench import (
    RdmError,
    Workbench,
    detect_format,
    extract_metadata,
    ipf_color,
    is_valid_perm_id,
    qr_payload,
    sha256_hex,
    stress_strain,
    validate,
)

__all__ = [
    "RdmError",
    "Workbench",
    "detect_format",
    "extract_metadata",
    "ipf_color",
    "is_valid_perm_id",
    "qr_payload",
    "sha256_hex",
    "stress_strain",
    "validate",
]
