"""
Binary blob format for grid fields.

Layout: 8-byte header (n as little-endian u32, degree as little-endian i32)
followed by n*n row-major (re, im) pairs of little-endian float64.
"""
import base64
import struct

import numpy as np

from core.exceptions import PreconditionError
from .fields import TwistedField

HEADER = struct.Struct('<Ii')


def encode_field(field: TwistedField) -> bytes:
    header = HEADER.pack(field.n, field.degree)
    return header + np.ascontiguousarray(field.values, dtype='<c16').tobytes(order='C')


def decode_field(blob: bytes) -> TwistedField:
    if len(blob) < HEADER.size:
        raise PreconditionError("field blob is shorter than its header")
    n, degree = HEADER.unpack_from(blob)
    expected = HEADER.size + 16 * n * n
    if len(blob) != expected:
        raise PreconditionError(f"field blob for n={n} must be {expected} bytes, got {len(blob)}")
    values = np.frombuffer(blob, dtype='<c16', offset=HEADER.size).reshape(n, n)
    return TwistedField(degree, values.astype(complex))


def field_to_base64(field: TwistedField) -> str:
    return base64.b64encode(encode_field(field)).decode('ascii')


def field_from_base64(text: str) -> TwistedField:
    try:
        blob = base64.b64decode(text.encode('ascii'), validate=True)
    except (ValueError, UnicodeEncodeError) as e:
        raise PreconditionError(f"field blob is not valid base64: {e}")
    return decode_field(blob)


def real_field(values, degree=0) -> TwistedField:
    """Wrap a real grid array as a field for serialization."""
    return TwistedField(degree, np.asarray(values, dtype=float))
