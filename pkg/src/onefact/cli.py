"""Command-line entry points.

    onefact count-labeled --n 10 --levels-dir L [--threads 4]
    onefact verify --n 10 --levels-dir L --mode dgm|mitm|table
    onefact classify --n 10 --seeds-dir S --out-dir O [--type 2,1,0]
                     [--split-depth 1] [--worker 0/2] [--mode seeds|full|merge]

Level files, seed files and outcome files are described next to their
readers and writers below.  Each output directory holds an append-only
manifest.txt recording finished work and file checksums, so an
interrupted run picks up where it stopped.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import os
import struct
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import _backend
from .autotypes import AutType, admissible_types
from .census import CensusInput, census_report, double_count_check, double_count_report, solve_census
from .labelcount import (DivisibilityError, LevelStore, base_level, distinct_factorization_table,
                         forward_accumulate_level, verify_dgm_level, verify_mitm)
from .graphcore import form_to_rows

log = logging.getLogger("onefact")

MAGIC = b"OF1L"
VERSION = 1


class RunError(Exception):
    """A check or a file failed; the command exits nonzero."""


# -- level files -----------------------------------------------------------------
# header: "OF1L", u16 version, u8 n, u8 k, u64 record count (little-endian)
# record: 16-byte form, u8 length L, L-byte little-endian LF magnitude

def encode_level(store: LevelStore) -> bytes:
    if store.state != "final":
        raise ValueError("only finalized levels are written")
    recs = store.sorted_records()
    out = [MAGIC, struct.pack("<HBBQ", VERSION, store.n, store.k, len(recs))]
    for r in recs:
        v = r.accumulator
        mag = v.to_bytes((v.bit_length() + 7) // 8, "little")
        if len(mag) > 255:
            raise ValueError("LF value too large for the record format")
        out.append(r.canonical_form + bytes([len(mag)]) + mag)
    return b"".join(out)


def decode_level(data: bytes) -> LevelStore:
    if data[:4] != MAGIC:
        raise RunError("not a level file")
    version, n, k, count = struct.unpack_from("<HBBQ", data, 4)
    if version != VERSION:
        raise RunError(f"unsupported level file version {version}")
    pos = 16
    records = []
    prev = None
    for _ in range(count):
        if pos + 17 > len(data):
            raise RunError("truncated level file")
        form = data[pos:pos + 16]
        L = data[pos + 16]
        value = int.from_bytes(data[pos + 17:pos + 17 + L], "little")
        pos += 17 + L
        if prev is not None and form <= prev:
            raise RunError("level file records are not strictly sorted")
        prev = form
        aut = _backend.canon_dense(n, form_to_rows(n, form))[1]
        records.append((form, value, aut))
    if pos != len(data):
        raise RunError("trailing bytes in level file")
    return LevelStore.from_records(n, k, records)


def level_path(levels_dir: str, n: int, k: int) -> str:
    return os.path.join(levels_dir, f"level-n{n}-k{k:02d}.of1l")


# -- manifest ----------------------------------------------------------------------

class Manifest:
    """Append-only text log: 'run', 'file <name> <sha256>', 'done <unit>' lines."""

    def __init__(self, directory: str, n: int, stage: str):
        self.path = os.path.join(directory, "manifest.txt")
        self.files: Dict[str, str] = {}
        self.done: set = set()
        if os.path.exists(self.path):
            with open(self.path) as fh:
                for line in fh:
                    parts = line.split()
                    if not parts:
                        continue
                    if parts[0] == "run" and (int(parts[2]) != n):
                        raise RunError(f"{self.path} belongs to a run with n={parts[2]}")
                    if parts[0] == "file":
                        self.files[parts[1]] = parts[2]
                    elif parts[0] == "done":
                        self.done.add(parts[1])
        else:
            self._append(f"run n {n} stage {stage}")

    def _append(self, line: str) -> None:
        with open(self.path, "a") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def record_file(self, path: str) -> None:
        name = os.path.basename(path)
        digest = sha256_file(path)
        self.files[name] = digest
        self._append(f"file {name} {digest}")

    def check_file(self, path: str) -> bool:
        name = os.path.basename(path)
        return name in self.files and os.path.exists(path) and sha256_file(path) == self.files[name]

    def mark_done(self, unit: str) -> None:
        self.done.add(unit)
        self._append(f"done {unit}")


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_atomic(path: str, data) -> None:
    tmp = path + ".tmp"
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(tmp, mode) as fh:
        fh.write(data)
    os.replace(tmp, path)


# -- count-labeled / verify -----------------------------------------------------------

def cmd_count_labeled(n: int, levels_dir: str, threads: int = 1, out=None) -> int:
    out = out or sys.stdout
    if n % 2 or n < 2:
        raise RunError("n must be even and at least 2")
    os.makedirs(levels_dir, exist_ok=True)
    man = Manifest(levels_dir, n, "levels")
    prev = None
    for k in range(n):
        path = level_path(levels_dir, n, k)
        if man.check_file(path):
            with open(path, "rb") as fh:
                st = decode_level(fh.read())
            log.info("level %d loaded (%d classes)", k, len(st))
        else:
            st = base_level(n) if k == 0 else forward_accumulate_level(prev, threads)
            if k:
                st.finalize()
            write_atomic(path, encode_level(st))
            man.record_file(path)
            log.info("level %d built (%d classes)", k, len(st))
        print(f"level {k} classes {len(st)}", file=out)
        prev = st
    (lf,) = prev.acc
    print(f"LF(K_{n}) = {lf}", file=out)
    return lf


def load_levels(n: int, levels_dir: str) -> List[LevelStore]:
    man = Manifest(levels_dir, n, "levels")
    levels = []
    for k in range(n):
        path = level_path(levels_dir, n, k)
        if not os.path.exists(path):
            raise RunError(f"missing level file {path}")
        if not man.check_file(path):
            raise RunError(f"checksum mismatch for {path}")
        with open(path, "rb") as fh:
            st = decode_level(fh.read())
        if st.n != n or st.k != k:
            raise RunError(f"{path} holds n={st.n} k={st.k}")
        levels.append(st)
    return levels


def cmd_verify(n: int, levels_dir: str, mode: str, threads: int = 1, out=None) -> None:
    out = out or sys.stdout
    levels = load_levels(n, levels_dir)
    if mode == "dgm":
        for k in range(1, n):
            ok = verify_dgm_level(levels[k], levels[k - 1], threads)
            print(f"dgm k={k} {'ok' if ok else 'MISMATCH'}", file=out)
            if not ok:
                raise RunError(f"recursion check failed at level {k}")
    elif mode == "mitm":
        values = [verify_mitm(n, k, levels) for k in range(n)]
        for k, v in enumerate(values):
            print(f"mitm k={k} {v}", file=out)
        if len(set(values)) != 1:
            raise RunError("meet-in-the-middle values differ")
    elif mode == "table":
        for k, v in enumerate(distinct_factorization_table(n, levels)):
            print(f"{k} {v}", file=out)
    else:
        raise RunError(f"unknown verify mode {mode}")


# -- classify ----------------------------------------------------------------------
# seed file: "# n=<n> type=<p,fU,fV> count=<c>" then per class
#   "<serialized seed> | <aut order>"
# unit file and merged outcome file, per seed:
#   "seed <id> ext <count>"
#   "accept <hex canonical blocks> <aut order> <p,fU,fV:count;...>" (sorted)

def _type_tag(t: AutType) -> str:
    return f"{t.p}_{t.f_U}_{t.f_V}"


def parse_type(s: str, n: int) -> AutType:
    triple = tuple(int(x) for x in s.split(","))
    for t in admissible_types(n):
        if t.triple == triple:
            return t
    raise RunError(f"type {s} is not admissible for n={n}")


def write_seeds(path: str, n: int, t: AutType, classes) -> None:
    lines = [f"# n={n} type={t} count={len(classes)}"]
    lines += [f"{sc.representative.serialize()} | {sc.aut_order}" for sc in classes]
    write_atomic(path, "\n".join(lines) + "\n")


def read_seeds(path: str, n: int, t: AutType):
    from .seedgen import Seed
    out = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            body, aut = line.rsplit("|", 1)
            sc = _seed_class_for(Seed.deserialize(n, body), t)
            if sc.aut_order != int(aut):
                raise RunError(f"seed file {path}: stored automorphism order disagrees")
            out.append(sc)
    return out


def _seed_class_for(seed, t):
    """Recompute the SeedClass (generators included) of a stored representative."""
    from .seedgen import SeedClass, _Grower
    gr = _Grower(t, seed.n)
    if gr.g != seed.group.generator:
        raise RunError("stored seed does not use the fixed group representative")
    f, aut, gens = gr.form(tuple((x, 0) for x in seed.anchor), seed.blocks)
    return SeedClass(seed, aut, tuple(gens), f)


def _format_accepted(a) -> str:
    types = ";".join(f"{p},{fu},{fv}:{c}" for (p, fu, fv), c in sorted(a.subgroup_types.items()))
    return f"accept {a.form.hex()} {a.aut_order} {types}"


def _parse_outcome(lines, num_seeds: int = 0) -> Dict[int, Tuple[int, List[str]]]:
    out: Dict[int, Tuple[int, List[str]]] = {sid: (0, []) for sid in range(num_seeds)}
    cur = None
    for line in lines:
        line = line.strip()
        if line.startswith("seed "):
            _, sid, _, ext = line.split()
            cur = int(sid)
            prev = out.get(cur, (0, []))
            out[cur] = (prev[0] + int(ext), prev[1])
        elif line.startswith("accept "):
            out[cur][1].append(line)
    return out


def _format_outcome(data: Dict[int, Tuple[int, List[str]]]) -> str:
    lines = []
    for sid in sorted(data):
        ext, acc = data[sid]
        lines.append(f"seed {sid} ext {ext}")
        lines.extend(sorted(acc))
    return "\n".join(lines) + "\n"


def _work_units(types, seeds, split_depth: int):
    from .extender import build_cover_instance, split_units
    for t in types:
        for sid, sc in enumerate(seeds[t.triple]):
            if split_depth <= 0:
                yield t, sid, 0, ()
            else:
                inst = build_cover_instance(sc.representative)
                for ui, pre in enumerate(split_units(inst, split_depth)):
                    yield t, sid, ui, pre


def cmd_classify(n: int, seeds_dir: str, out_dir: str, type_filter: Optional[str] = None,
                 split_depth: int = 0, worker: Tuple[int, int] = (0, 1), mode: str = "full",
                 out=None) -> None:
    out = out or sys.stdout
    from .seedgen import classify_seeds
    from .extender import Acceptor, extend_seed

    all_types = admissible_types(n)
    types = [parse_type(type_filter, n)] if type_filter else all_types
    os.makedirs(seeds_dir, exist_ok=True)
    seed_man = Manifest(seeds_dir, n, "seeds")
    seeds = {}
    for t in types:
        path = os.path.join(seeds_dir, f"seeds-n{n}-{_type_tag(t)}.txt")
        if seed_man.check_file(path):
            seeds[t.triple] = read_seeds(path, n, t)
        else:
            seeds[t.triple] = classify_seeds(t, n)
            write_seeds(path, n, t, seeds[t.triple])
            seed_man.record_file(path)
        print(f"seeds {t} {len(seeds[t.triple])}", file=out)
    if mode == "seeds":
        return

    os.makedirs(os.path.join(out_dir, "units"), exist_ok=True)
    man = Manifest(out_dir, n, "classify")
    wi, wm = worker
    if mode in ("full", "extend"):
        acceptor = Acceptor(n, all_types)
        for idx, (t, sid, ui, pre) in enumerate(_work_units(types, seeds, split_depth)):
            if idx % wm != wi:
                continue
            unit = f"{_type_tag(t)}-s{sid}-u{ui}-d{split_depth}"
            upath = os.path.join(out_dir, "units", unit + ".txt")
            if unit in man.done and os.path.exists(upath):
                continue
            res = extend_seed(seeds[t.triple][sid], sid, acceptor, prefixes=[pre])
            text = f"seed {sid} ext {res.ext_count}\n" + "".join(_format_accepted(a) + "\n" for a in res.accepted)
            write_atomic(upath, text)
            man.mark_done(unit)
        if wm > 1 and mode == "full":
            print(f"worker {wi}/{wm} finished; run with --mode merge to combine", file=out)
            return
    if mode not in ("full", "merge", "extend"):
        raise RunError(f"unknown classify mode {mode}")
    if mode == "extend":
        return
    _merge_and_report(n, types, all_types, seeds, out_dir, split_depth, man, out)


def _merge_and_report(n, types, all_types, seeds, out_dir, split_depth, man, out) -> None:
    expected = [f"{_type_tag(t)}-s{sid}-u{ui}-d{split_depth}"
                for t, sid, ui, _ in _work_units(types, seeds, split_depth)]
    missing = [u for u in expected if u not in man.done]
    if missing:
        raise RunError(f"{len(missing)} work units not finished, e.g. {missing[0]}")
    accepted: Dict[str, int] = {}
    dc_rows = []
    for t in types:
        lines = []
        for u in expected:
            if u.startswith(_type_tag(t) + "-"):
                with open(os.path.join(out_dir, "units", u + ".txt")) as fh:
                    lines.extend(fh.read().splitlines())
        data = _parse_outcome(lines, len(seeds[t.triple]))
        opath = os.path.join(out_dir, f"outcome-n{n}-{_type_tag(t)}.txt")
        write_atomic(opath, _format_outcome(data))
        man.record_file(opath)
        for sid, (_ext, acc) in data.items():
            for line in acc:
                _, form, aut, _types = line.split()
                if form in accepted:
                    raise RunError(f"class {form[:16]}... accepted twice")
                accepted[form] = int(aut)
    # the double count needs every accepted class, so it is only meaningful for full runs
    if len(types) == len(all_types):
        per_class = []
        for t in types:
            opath = os.path.join(out_dir, f"outcome-n{n}-{_type_tag(t)}.txt")
            with open(opath) as fh:
                per_class.extend(l for l in fh.read().splitlines() if l.startswith("accept "))
        for t in types:
            opath = os.path.join(out_dir, f"outcome-n{n}-{_type_tag(t)}.txt")
            with open(opath) as fh:
                data = _parse_outcome(fh.read().splitlines())
            seed_data = [(seeds[t.triple][sid].aut_order, ext) for sid, (ext, _) in data.items()]
            class_data = []
            for line in per_class:
                _, _form, aut, tstr = line.split()
                counts = dict(item.split(":") for item in tstr.split(";")) if tstr else {}
                class_data.append((int(aut), int(counts.get(str(t), 0))))
            lhs, rhs, ok = double_count_check(t, n, seed_data, class_data)
            dc_rows.append((t, lhs, rhs, ok))
    tallies: Dict[int, int] = {}
    for a in accepted.values():
        tallies[a] = tallies.get(a, 0) + 1
    tallies = dict(sorted(tallies.items()))
    lines = [f"symmetric classes {len(accepted)}"]
    if not dc_rows:
        lines += [f"N_{i} {c}" for i, c in tallies.items()]
    else:
        from .labelcount import build_levels
        lf = build_levels(n)[-1].acc[0] if n <= 12 else None
        if lf is None:
            from .census import PUBLISHED_LF_KN
            lf = PUBLISHED_LF_KN[n]
        n1, total = solve_census(CensusInput(n, lf, tallies))
        lines += census_report(n, n1, total, tallies)
        lines += double_count_report(dc_rows, n)
        lines.append(f"NF(K_{n}) = {total}")
    text = "\n".join(lines) + "\n"
    write_atomic(os.path.join(out_dir, f"census-n{n}.txt"), text)
    out.write(text)
    if any(not ok for _, _, _, ok in dc_rows):
        raise RunError("double count failed")


# -- argument parsing ---------------------------------------------------------------

def _worker_arg(s: str) -> Tuple[int, int]:
    i, m = (int(x) for x in s.split("/"))
    if not 0 <= i < m:
        raise argparse.ArgumentTypeError("worker must be i/m with 0 <= i < m")
    return i, m


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="onefact", description="One-factorization counting and classification")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count-labeled", help="build regularity levels and print LF(K_n)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--levels-dir", required=True)
    c.add_argument("--threads", type=int, default=1)

    v = sub.add_parser("verify", help="check stored levels")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--levels-dir", required=True)
    v.add_argument("--mode", choices=("dgm", "mitm", "table"), required=True)
    v.add_argument("--threads", type=int, default=1)

    k = sub.add_parser("classify", help="classify seeds and symmetric one-factorizations")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--seeds-dir", required=True)
    k.add_argument("--out-dir", required=True)
    k.add_argument("--type", dest="type_filter")
    k.add_argument("--split-depth", type=int, default=0)
    k.add_argument("--worker", type=_worker_arg, default=(0, 1))
    k.add_argument("--mode", choices=("seeds", "full", "extend", "merge"), default="full")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        if args.command == "count-labeled":
            cmd_count_labeled(args.n, args.levels_dir, args.threads)
        elif args.command == "verify":
            cmd_verify(args.n, args.levels_dir, args.mode, args.threads)
        else:
            cmd_classify(args.n, args.seeds_dir, args.out_dir, args.type_filter, args.split_depth,
                         args.worker, args.mode)
    except (RunError, DivisibilityError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
