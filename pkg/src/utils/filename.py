"""Report filenames derived from check selectors."""

import re


def sanitize_filename(name: str, replacement: str = "_") -> str:
    """
    Convert a selector or label to a safe filename stem.

    Globs and separators are dropped so a selector such as ``bigcell.*`` maps
    to a stable stem.

    Args:
        name: The original string to sanitize
        replacement: Character to replace spaces and dots with (default: "_")

    Returns:
        A sanitized lower-case string safe for use as a filename

    Examples:
        >>> sanitize_filename("bigcell.*")
        'bigcell'
        >>> sanitize_filename("ring.vp, nbar.kappa_box")
        'ring_vp_nbar_kappa_box'
    """
    # Separators between check ids become spaces
    clean_name = re.sub(r"[.,/\\]", " ", name)
    # keep word characters, spaces and hyphens
    clean_name = re.sub(r"[^\w\s-]", "", clean_name)
    clean_name = clean_name.strip()
    clean_name = re.sub(r"\s+", replacement, clean_name)
    if not clean_name:
        clean_name = "unnamed"

    return clean_name.lower()


def report_filename(selector: str, seed: int, fmt: str = "json") -> str:
    """
    Filename of a suite report.

    Example:
        >>> report_filename("all", 7)
        'all_seed7.json'
    """
    extension = {"text": "txt", "latex": "tex"}.get(fmt, fmt)
    return f"{sanitize_filename(selector)}_seed{seed}.{extension}"
