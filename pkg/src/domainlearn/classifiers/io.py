"""Plain-text model files.

One ``key = type[shape] values`` line per field after a ``kind`` header;
floats are written with 17 significant digits so a load reproduces every
bit::

    domainlearn-model 1
    kind = ncc
    centers = float[2,2] 1 0 6 0
"""
import numpy as np

from .base import MODEL_KINDS

MAGIC = "domainlearn-model 1"


def _encode(value):
    if isinstance(value, str):
        return f"str[] {value}"
    arr = np.asarray(value)
    if arr.dtype.kind in "iub":
        typ, fmt = "int", lambda v: str(int(v))
    else:
        typ, fmt = "float", lambda v: format(float(v), ".17g")
    shape = ",".join(str(s) for s in arr.shape)
    return f"{typ}[{shape}] " + " ".join(fmt(v) for v in arr.ravel())


def _decode(text):
    head, _, body = text.partition(" ")
    typ, shape = head[:-1].split("[")
    if typ == "str":
        return body
    dims = tuple(int(s) for s in shape.split(",")) if shape else ()
    dtype = np.int64 if typ == "int" else np.float64
    values = np.array(body.split(), dtype=dtype) if body.strip() else np.array([], dtype=dtype)
    if not dims:
        return int(values[0]) if typ == "int" else float(values[0])
    return values.reshape(dims)


def dumps_model(model):
    lines = [MAGIC, f"kind = {model.kind}"]
    for key, value in model.params().items():
        lines.append(f"{key} = {_encode(value)}")
    return "\n".join(lines) + "\n"


def loads_model(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != MAGIC:
        raise ValueError("not a domainlearn model file")
    kind = None
    params = {}
    for ln in lines[1:]:
        key, sep, value = ln.partition(" = ")
        if not sep:
            raise ValueError(f"malformed line: {ln!r}")
        if key == "kind":
            kind = value.strip()
        else:
            params[key.strip()] = _decode(value)
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    return MODEL_KINDS[kind].from_params(params)


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())
