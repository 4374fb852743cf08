"""First-match ACL kernels over encoded entry/packet arrays.

Entries are int64 rows ``(action, proto, src, src_wc, dst, dst_wc, port)``;
packets are int64 rows ``(proto, src, dst, port)``. ``port == -1`` means
"any" on an entry and "no port" on a packet. Protocol code 0 is ``ip``,
which on an entry matches every packet protocol.

The numba kernel is used unless ``NETCFG_DISABLE_NUMBA`` is set to a truthy
value or numba is not importable; the numpy path is always available as
:func:`first_match_numpy`.
"""

from __future__ import annotations

import os

import numpy as np

PROTO_CODES = {"ip": 0, "tcp": 1, "udp": 2, "icmp": 3}
MASK32 = np.int64(0xFFFFFFFF)
# bounds the E x P boolean matrix of the numpy path
_CHUNK = 16384


def first_match_numpy(entries: np.ndarray, packets: np.ndarray) -> np.ndarray:
    """Index of the first matching entry per packet, -1 when none matches."""
    n = packets.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    if entries.shape[0] == 0 or n == 0:
        return out
    e = entries[:, None, :]
    for start in range(0, n, _CHUNK):
        p = packets[None, start:start + _CHUNK, :]
        proto_ok = (e[..., 1] == 0) | (e[..., 1] == p[..., 0])
        src_care = ~e[..., 3] & MASK32
        dst_care = ~e[..., 5] & MASK32
        src_ok = (p[..., 1] & src_care) == (e[..., 2] & src_care)
        dst_ok = (p[..., 2] & dst_care) == (e[..., 4] & dst_care)
        port_ok = (e[..., 6] == -1) | (e[..., 6] == p[..., 3])
        hit = proto_ok & src_ok & dst_ok & port_ok
        any_hit = hit.any(axis=0)
        first = hit.argmax(axis=0)
        out[start:start + _CHUNK] = np.where(any_hit, first, -1)
    return out


def _first_match_loops(entries, packets):
    n = packets.shape[0]
    m = entries.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        proto = packets[i, 0]
        src = packets[i, 1]
        dst = packets[i, 2]
        port = packets[i, 3]
        for j in range(m):
            ep = entries[j, 1]
            if ep != 0 and ep != proto:
                continue
            src_care = ~entries[j, 3] & 0xFFFFFFFF
            if (src & src_care) != (entries[j, 2] & src_care):
                continue
            dst_care = ~entries[j, 5] & 0xFFFFFFFF
            if (dst & dst_care) != (entries[j, 4] & dst_care):
                continue
            if entries[j, 6] != -1 and entries[j, 6] != port:
                continue
            out[i] = j
            break
    return out


def _numba_disabled() -> bool:
    return os.environ.get("NETCFG_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


try:
    from numba import njit

    first_match_numba = njit(cache=False, nogil=True)(_first_match_loops)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    first_match_numba = None
    HAVE_NUMBA = False


def backend_name() -> str:
    return "numba" if HAVE_NUMBA and not _numba_disabled() else "numpy"


def first_match(entries: np.ndarray, packets: np.ndarray) -> np.ndarray:
    if backend_name() == "numba":
        return first_match_numba(entries, packets)
    return first_match_numpy(entries, packets)
