"""Exhaustive check of sum_{k>=0} c_t(k) > 1/2 over a range of t.

t-space is cut into ordered chunks of 2^14 values.  Chunks are computed
independently (optionally in worker processes) and written by a single
writer in ascending order, so the CSV does not depend on the job count.
A JSON checkpoint after each chunk records the CSV byte length and the
running minimum, which is enough to resume a killed run.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from multiprocessing import get_context
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Tuple

from .bitcore import block_count
from .drift import ab_from_vector, v_seq, walk_dist_vectors
from .dyadic import HALF, Dyadic, pmf_partial_sum

log = logging.getLogger(__name__)

CHUNK_BITS = 14
CSV_HEADER = "t,N,v_num,v_exp,cusick_num,cusick_exp,margin_decimal\n"

_DEC12 = Context(prec=12, rounding=ROUND_HALF_EVEN)


def decimal12(x: Dyadic) -> str:
    """Exact dyadic rounded half-even to 12 significant digits."""
    if not x.num:
        return "0"
    exact = Context(prec=len(str(abs(x.num))) + x.exp + 2).divide(
        Decimal(x.num), Decimal(1 << x.exp)
    )
    return str(_DEC12.plus(exact))


@dataclass(frozen=True)
class SweepRecord:
    t: int
    N: int
    v: Dyadic
    cusick: Dyadic

    @property
    def margin(self) -> Dyadic:
        return self.cusick - HALF

    def csv_row(self) -> str:
        return (
            f"{self.t},{self.N},{self.v.num},{self.v.exp},"
            f"{self.cusick.num},{self.cusick.exp},{decimal12(self.margin)}\n"
        )


def chunk_records(chunk: int, tmax: int) -> List[SweepRecord]:
    """Records for ``t`` in ``[chunk * 2^14, (chunk + 1) * 2^14) & [1, tmax)``."""
    lo = chunk << CHUNK_BITS
    hi = min(lo + (1 << CHUNK_BITS), tmax)
    out = []
    for u, vec in walk_dist_vectors(CHUNK_BITS - 1, prefix=chunk):
        for t in (2 * u, 2 * u + 1):
            if t < max(lo, 1) or t >= hi:
                continue
            a, b = ab_from_vector(t, vec)
            cusick = (pmf_partial_sum(a, 0) + pmf_partial_sum(b, 0)).ldexp(-1)
            out.append(SweepRecord(t, block_count(t), v_seq(t), cusick))
        if 2 * u >= hi:
            break
    return out


def _chunk_job(args: Tuple[int, int]) -> List[SweepRecord]:
    return chunk_records(*args)


@dataclass
class SweepSummary:
    tmax: int
    records: int = 0
    min_t: Optional[int] = None
    min_value: Optional[Dyadic] = None
    violations: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and self.records == max(self.tmax - 1, 0)

    def update(self, rec: SweepRecord) -> None:
        self.records += 1
        if self.min_value is None or rec.cusick < self.min_value:
            self.min_t, self.min_value = rec.t, rec.cusick
        if rec.margin <= 0 and len(self.violations) < 100:
            self.violations.append(rec.t)

    def to_json(self) -> dict:
        mv = self.min_value
        return {
            "tmax": self.tmax,
            "records": self.records,
            "minimum": None
            if mv is None
            else {"t": self.min_t, "num": mv.num, "exp": mv.exp, "decimal": decimal12(mv)},
            "all_margins_positive": not self.violations,
            "violations": self.violations,
        }


def _write_checkpoint(path: Path, state: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state, sort_keys=True))
    os.replace(tmp, path)


def _iter_chunks(chunks: Iterable[int], tmax: int, jobs: int):
    args = [(c, tmax) for c in chunks]
    if jobs <= 1:
        for a in args:
            yield _chunk_job(a)
        return
    with get_context("spawn").Pool(jobs) as pool:
        yield from pool.imap(_chunk_job, args)


def run_sweep(
    tmax: int,
    out: TextIO,
    jobs: int = 1,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
) -> SweepSummary:
    """Stream records for ``1 <= t < tmax`` to ``out`` and return the summary.

    ``out`` must be a seekable text file when checkpointing.
    """
    if tmax < 1:
        raise ValueError("tmax must be at least 1")
    n_chunks = -(-tmax >> CHUNK_BITS)
    summary = SweepSummary(tmax)
    start = 0
    if resume and checkpoint is not None and checkpoint.exists():
        state = json.loads(checkpoint.read_text())
        if state["tmax"] != tmax or state["chunk_bits"] != CHUNK_BITS:
            raise ValueError("checkpoint belongs to a different sweep")
        start = state["next_chunk"]
        summary.records = state["records"]
        summary.violations = state["violations"]
        if state["min_t"] is not None:
            summary.min_t = state["min_t"]
            summary.min_value = Dyadic(state["min_num"], state["min_exp"])
        out.seek(state["csv_bytes"])
        out.truncate()
        log.info("resuming at chunk %d of %d", start, n_chunks)
    else:
        out.seek(0)
        out.truncate()
        out.write(CSV_HEADER)

    for chunk, records in enumerate(_iter_chunks(range(start, n_chunks), tmax, jobs), start):
        for rec in records:
            out.write(rec.csv_row())
            summary.update(rec)
        if checkpoint is not None:
            out.flush()
            os.fsync(out.fileno())
            _write_checkpoint(
                checkpoint,
                {
                    "tmax": tmax,
                    "chunk_bits": CHUNK_BITS,
                    "next_chunk": chunk + 1,
                    "csv_bytes": out.tell(),
                    "records": summary.records,
                    "min_t": summary.min_t,
                    "min_num": summary.min_value.num if summary.min_value else None,
                    "min_exp": summary.min_value.exp if summary.min_value else None,
                    "violations": summary.violations,
                },
            )
        log.debug("chunk %d done, %d records", chunk, summary.records)
    out.flush()
    return summary
