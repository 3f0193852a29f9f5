"""On-disk cache of spectral reports keyed by a content hash of the run."""
import hashlib
import json
import os
import tempfile
from pathlib import Path

from .eigensolve import spectrum_generalized, spectrum_reduced
from .operators import assemble_blocks, assemble_L, assemble_M

#: Bumped whenever the serialized report changes meaning.
CACHE_VERSION = 1
DEFAULT_CACHE_DIR = ".landau-cache"


def compute_spectrum(op, params, form="reduced"):
    """Solve for the spectrum of ``L_n`` or ``M_n`` and return a SpectralReport."""
    if op == "L":
        if form == "reduced":
            return spectrum_reduced(assemble_L(params))
        if form == "generalized":
            return spectrum_generalized(*assemble_blocks(params))
        raise ValueError(f"unknown form {form!r}")
    if op == "M":
        if form != "reduced":
            raise ValueError("the swirl operator has no block formulation; use form=reduced")
        return spectrum_reduced(assemble_M(params))
    raise ValueError(f"operator must be L or M, got {op!r}")


def cache_key(op, params, form):
    payload = {"version": CACHE_VERSION, "op": op, "form": form, **params.as_dict()}
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


class ReportCache:
    """Directory of ``<sha256>.json`` files, each holding one report dictionary.

    Writes go to a temporary file in the same directory followed by an atomic
    rename, so concurrent writers never expose partial files.
    """

    def __init__(self, root=DEFAULT_CACHE_DIR):
        self.root = Path(root)

    def path(self, op, params, form):
        return self.root / f"{cache_key(op, params, form)}.json"

    def get(self, op, params, form):
        path = self.path(op, params, form)
        try:
            with open(path) as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None
        except json.JSONDecodeError:
            return None

    def put(self, op, params, form, report):
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(report, fh)
            os.replace(tmp, self.path(op, params, form))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def spectrum_dict(op, params, form="reduced", cache=None):
    """Report dictionary for one run, served from ``cache`` when present.

    Returns ``(report, hit)``.  The dictionary round-trips through JSON, so a
    cached and a freshly computed report compare equal.
    """
    if cache is not None:
        hit = cache.get(op, params, form)
        if hit is not None:
            return hit, True
    report = json.loads(json.dumps(compute_spectrum(op, params, form).to_dict()))
    if cache is not None:
        cache.put(op, params, form, report)
    return report, False
