"""Command-line driver: reproducible certification pipelines.

Each subcommand binds one module pipeline and emits a JSON report with
per-check verdicts.  Reports are byte-identical across runs on identical
inputs (no timestamps unless --timing is given, fixed field modulus,
canonical ordering everywhere); the exit status is 0 exactly when every
check passes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import product

from . import __version__
from .brauer_pairs import BlockContext, maximal_pairs
from .errors import BlockfusionError, ParseError
from .ffield import field
from .fusion import (
    block_fusion,
    is_nilpotent,
    sylow_fusion,
    systems_equal,
    trivial_fusion,
)
from .group_algebra import (
    blocks,
    center_basis,
    defect_group,
    principal_block,
    splitting_field,
)
from .groups import (
    Subgroup,
    load_group,
    named_group,
    perm_from_cycles,
    sylow_subgroup,
)
from .pathalg import (
    chain_limit_check,
    count_words_avoiding,
    dihedral_ideal_chain,
    group_algebra_presentation,
    is_admissible,
    parse_path_combination,
    parse_quiver_text,
    path_string,
    radical_layer_dims,
    tame_algebra,
    truncated_quotient,
)
from .tower import (
    Tower,
    centralizer_bijection_check,
    dihedral_descent_tower,
    dihedral_triviality_check,
    embedding_check,
    maximal_truncated_pair,
    stabilization_mu,
    tame_quotient_check,
    tower_blocks,
)


def _field_for(G, p, degree_override):
    return splitting_field(G, p, degree_override)


def _field_info(K):
    return {"p": K.p, "m": K.m, "modulus": list(K.modulus)}


def _check(name, ok, **data):
    entry = {"name": name, "verdict": "pass" if ok else "fail"}
    entry.update(data)
    return entry


def _skip(name, reason):
    return {"name": name, "verdict": "skipped", "reason": reason}


def parse_tower_file(path):
    """Tower file.  Ambient form:

        ambient: S4
        kernel: (0 1)(2 3), (0 2)(1 3)
        kernel: -

    Each kernel line lists generators (comma separated cycles) of one
    normal subgroup of the ambient group; '-' is the trivial subgroup.

    Explicit form (no ambient; coarsest level first, each later level
    carrying the images of its generators in the previous level):

        level: dihedral(8)
        level: dihedral(16)
        map: (0 1 2 3), (0 3)(1 2)
    """
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty tower file")
    if lines[0].lower().startswith("ambient:"):
        G = named_group(lines[0].split(":", 1)[1].strip())
        kernels = []
        for ln in lines[1:]:
            if not ln.lower().startswith("kernel:"):
                raise ParseError(f"expected a kernel line, got {ln!r}")
            body = ln.split(":", 1)[1].strip()
            if body == "-":
                kernels.append(G.trivial_subgroup())
            else:
                gens = [perm_from_cycles(G.degree, part.strip())
                        for part in body.split(",")]
                kernels.append(Subgroup(G, gens))
        if not kernels:
            raise ParseError("tower file lists no kernels")
        return Tower.from_ambient(G, kernels)
    if not lines[0].lower().startswith("level:"):
        raise ParseError("tower file must start with 'ambient:' or 'level:'")
    level_texts, map_texts, current = [], [], None
    for ln in lines:
        low = ln.lower()
        if low.startswith("level:"):
            rest = ln.split(":", 1)[1].strip()
            current = [rest] if rest else []
            level_texts.append(current)
            map_texts.append(None)
        elif low.startswith("map:"):
            if map_texts and map_texts[-1] is None:
                map_texts[-1] = ln.split(":", 1)[1].strip()
            else:
                raise ParseError("map line without a preceding level")
        elif current is not None:
            current.append(ln)
        else:
            raise ParseError(f"unexpected line {ln!r}")
    from .groups import GroupHom, parse_group_text

    groups = [parse_group_text("\n".join(t)) for t in level_texts]
    maps = []
    for i in range(1, len(groups)):
        if map_texts[i] is None:
            raise ParseError(f"level {i + 1} is missing its map line")
        images = [perm_from_cycles(groups[i - 1].degree, part.strip())
                  for part in map_texts[i].split(",")]
        maps.append(GroupHom(groups[i], groups[i - 1], images))
    return Tower(groups, maps, ambient=None)


def _select_block(G, K, spec_text):
    bs = blocks(G, K)
    if spec_text in (None, "principal"):
        return principal_block(G, K)
    idx = int(spec_text)
    if not 0 <= idx < len(bs):
        raise ParseError(f"block index {idx} out of range (have {len(bs)})")
    return bs[idx]


# -- subcommands ---------------------------------------------------------------

def run_blocks(args):
    G = load_group(args.group)
    K = _field_for(G, args.p, args.field_degree)
    bs = blocks(G, K)
    checks = []
    total = bs[0].element
    for b in bs[1:]:
        total = total + b.element
    from .group_algebra import AlgebraElement

    checks.append(_check("sum_of_blocks_is_one",
                         total == AlgebraElement.one(G, K)))
    orth = all((a.element * b.element).is_zero()
               for i, a in enumerate(bs) for b in bs[i + 1:])
    checks.append(_check("pairwise_orthogonal", orth))
    central = all(b.element.conj(g) == b.element
                  for b in bs for g in G.generators)
    checks.append(_check("central", central))
    listing = []
    for i, b in enumerate(bs):
        D = defect_group(G, b)
        listing.append({
            "index": i,
            "principal": b.augmentation() == K.one,
            "defect_order": D.order,
            "defect_generators": [g.cycle_string() for g in D.small_gens()],
            "idempotent": b.element.serialize(),
        })
    if args.oracle:
        A = center_basis(G, K)
        if K.q ** A.dim <= 4096:
            found = []
            for coords in product(range(K.q), repeat=A.dim):
                if not any(coords):
                    continue
                if A.mul_coords(coords, coords) == tuple(coords):
                    found.append(tuple(coords))
            prims = [e for e in found
                     if not any(f != e and A.mul_coords(e, f) == f
                                for f in found)]
            checks.append(_check("exhaustive_idempotent_oracle",
                                 sorted(prims) == sorted(b.coords for b in bs),
                                 oracle_count=len(prims)))
        else:
            checks.append(_skip("exhaustive_idempotent_oracle",
                                f"search space {K.q}^{A.dim} too large"))
    return {"blocks": listing, "checks": checks, "field": _field_info(K)}


def run_brauer_pairs(args):
    G = load_group(args.group)
    K = _field_for(G, args.p, args.field_degree)
    ctx = BlockContext(G, args.p, K)
    b = _select_block(G, K, args.block)
    rep, all_pairs, orbit_size = maximal_pairs(ctx, b)
    checks = [
        _check("maximal_pairs_conjugate", True,
               count_on_defect_group=len(all_pairs)),
        _check("first_component_is_defect_group",
               rep.P.order == defect_group(G, b).order),
    ]
    return {
        "block_index": blocks(G, K).index(b),
        "representative": rep.serialize(),
        "orbit_size": orbit_size,
        "checks": checks,
        "field": _field_info(K),
    }


def run_fusion(args):
    G = load_group(args.group)
    K = _field_for(G, args.p, args.field_degree)
    ctx = BlockContext(G, args.p, K)
    b = _select_block(G, K, args.block)
    rep, _, _ = maximal_pairs(ctx, b)
    F = block_fusion(G, b, rep)
    checks = []
    auts = [{"subgroup_order": S.order, "aut_order": len(F.aut(S))}
            for S in F.subgroups]
    if args.nilpotent:
        verdict = is_nilpotent(F, cross_check=True)
        checks.append(_check("nilpotent", True, value=verdict,
                             criterion="Alperin + hom-table cross-check"))
    if args.compare_sylow:
        S = sylow_subgroup(G, args.p)
        same = (S.element_set == rep.P.element_set)
        if same:
            FS = sylow_fusion(G, S)
            checks.append(_check("equals_sylow_fusion", True,
                                 value=systems_equal(F, FS)))
        else:
            checks.append(_skip("equals_sylow_fusion",
                                "defect group is not the Sylow subgroup"))
    if args.oracle:
        checks.append(_check("category_laws", F.validate()))
    return {
        "base_order": F.base.order,
        "morphisms": F.morphism_count(),
        "aut_orders": auts,
        "checks": checks,
        "field": _field_info(K),
    }


def run_tower(args):
    tw = parse_tower_file(args.tower)
    if args.depth:
        tw = Tower.from_ambient(tw.ambient, tw.kernels[: args.depth])
    K = _field_for(tw.ambient, args.p, args.field_degree)
    bd = tower_blocks(tw, args.p, K, seed="principal")
    checks = []
    D, seq = maximal_truncated_pair(tw, bd)
    checks.append(_check("maximal_truncated_pair", True,
                         defect_order=D.order, start_level=seq.start + 1))
    rep = stabilization_mu(tw, bd)
    mu = rep.summary()
    checks.append(_check("stabilization_mu",
                         all(a < b for a, b in zip(mu["mu"], mu["mu"][1:])),
                         **mu))
    for lvl in range(rep.i0, tw.depth):
        emb = embedding_check(tw, bd, lvl, rep)
        checks.append(_check(f"embedding_level_{lvl + 1}", emb["ok"],
                             mu=emb["mu"], equal=emb["equal"]))
    if args.bijection:
        P = sylow_subgroup(tw.ambient, args.p) if args.subgroup is None else \
            Subgroup(tw.ambient, [perm_from_cycles(tw.ambient.degree, c.strip())
                                  for c in args.subgroup.split(",")])
        cb = centralizer_bijection_check(tw, P, args.p, K)
        checks.append(_check("centralizer_bijection", cb["ok"],
                             thinned_levels=cb["thinned_levels"],
                             primitives=cb["num_primitives"]))
    return {"levels": [Q.order for Q in tw.levels], "checks": checks,
            "field": _field_info(K)}


def run_dihedral_certify(args):
    G = load_group(args.group)
    if args.p != 2:
        raise ParseError("dihedral certification is a p = 2 check")
    ft = dihedral_descent_tower(G, min_order=args.min_order)
    rep = dihedral_triviality_check(ft)
    checks = [_check(f"level_{lvl['level']}_order_{lvl['order']}",
                     lvl.get("trivial", True),
                     role=lvl["role"])
              for lvl in rep["levels"]]
    checks.append(_check("all_non_top_levels_trivial", rep["ok"]))
    if args.tame:
        S = sylow_subgroup(G, 2)
        tq = tame_quotient_check(S.as_group())
        checks.append(_check("tame_quotients_dihedral", tq["ok"],
                             family=tq["family"]))
    return {"levels": [lvl["order"] for lvl in rep["levels"]],
            "checks": checks}


def run_pathalg(args):
    K = field(2, args.field_degree or 1)
    checks = []
    if args.tame:
        A = tame_algebra(args.tame, args.degree, K)
        dims = A.dims_by_degree()
        result = {"tame_index": args.tame, "dims_by_degree": dims,
                  "total_dim": A.dim}
        if args.oracle:
            quiver = A.quiver
            forb = []
            if args.tame == 1:
                forb = [(0, 0), (1, 1)]
            elif args.tame == 2:
                forb = [(1, 2), (0, 0)]
            elif args.tame == 3:
                forb = [(2, 3), (1, 0)]
            oracle_dims = [count_words_avoiding(quiver, forb, n)
                           for n in range(args.degree)]
            checks.append(_check("word_enumeration_oracle",
                                 oracle_dims == dims, oracle=oracle_dims))
    elif args.dihedral_chain:
        chain = dihedral_ideal_chain(3, args.dihedral_chain, K)
        rep = chain_limit_check(chain, args.degree)
        result = {"chain": f"ker(bouquet -> kD_2^n), n = 3..{args.dihedral_chain}",
                  "per_degree": rep["per_degree"]}
        checks.append(_check("eventually_constant", rep["ok"]))
        for entry in rep["per_degree"]:
            s = entry["s"]
            limit_dim = tame_algebra(1, max(s, 2), K).quotient_dim_at(s)
            checks.append(_check(f"limit_dim_s_{s}",
                                 entry["stabilized_dim"] == limit_dim,
                                 stabilized=entry["stabilized_dim"],
                                 limit=limit_dim))
    elif args.quiver:
        with open(args.quiver) as fh:
            quiver = parse_quiver_text(fh.read())
        gens = []
        if args.ideal:
            gens = [parse_path_combination(quiver, part, K)
                    for part in args.ideal.split(";") if part.strip()]
        A = truncated_quotient(quiver, gens, args.degree, K)
        result = {"dims_by_degree": A.dims_by_degree(), "total_dim": A.dim,
                  "basis": [path_string(quiver, q) for q in A.basis_paths]}
        if args.admissible_bound:
            n = is_admissible(quiver, gens, args.admissible_bound, K)
            checks.append(_check("admissible", True, least_n=n))
    else:
        raise ParseError("pathalg needs --tame, --dihedral-chain or --quiver")
    result["checks"] = checks
    return result


def run_presentation(args):
    G = load_group(args.group)
    K = field(args.p) if args.field_degree is None else field(args.p, args.field_degree)
    quiver, kernels, A = group_algebra_presentation(G, args.degree, K)
    layers = radical_layer_dims(G, K, args.degree)
    checks = [
        _check("dims_match_radical_layers",
               A.dims_by_degree() == layers + [0] * (args.degree - len(layers)),
               dims=A.dims_by_degree(), radical_layers=layers),
    ]
    return {
        "loops": len(quiver.arrows),
        "dims_by_degree": A.dims_by_degree(),
        "total_dim": A.dim,
        "kernel_dims_by_degree": [len(k) for k in kernels],
        "checks": checks,
    }


# -- driver --------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="blockfusion",
        description="desk-scale certification of block, fusion-system and "
                    "path-algebra statements")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, group=True, prime=True):
        if group:
            sp.add_argument("--group", required=True,
                            help="group file or name (S4, D16, PGL27, ...)")
        if prime:
            sp.add_argument("--p", type=int, required=True, help="the prime p")
        sp.add_argument("--field-degree", type=int, default=None,
                        help="override the splitting-field degree m")
        sp.add_argument("--out", default=None, help="write the report here")
        sp.add_argument("--oracle", action="store_true",
                        help="run brute-force oracles alongside and diff")
        sp.add_argument("--timing", action="store_true",
                        help="include wall-clock timing (breaks byte-stability)")

    sp = sub.add_parser("blocks", help="block idempotents and defect groups")
    common(sp)
    sp.set_defaults(fn=run_blocks)

    sp = sub.add_parser("brauer-pairs", help="maximal Brauer pairs of a block")
    common(sp)
    sp.add_argument("--block", default="principal")
    sp.set_defaults(fn=run_brauer_pairs)

    sp = sub.add_parser("fusion", help="block fusion systems")
    common(sp)
    sp.add_argument("--block", default="principal")
    sp.add_argument("--nilpotent", action="store_true",
                    help="run the nilpotency detector")
    sp.add_argument("--compare-sylow", action="store_true",
                    help="compare against the Sylow fusion system")
    sp.set_defaults(fn=run_fusion)

    sp = sub.add_parser("tower", help="stabilization and embedding on a tower")
    common(sp, group=False)
    sp.add_argument("--tower", required=True, help="tower file")
    sp.add_argument("--depth", type=int, default=None,
                    help="truncate the tower to this many levels")
    sp.add_argument("--bijection", action="store_true",
                    help="also run the centralizer bijection check")
    sp.add_argument("--subgroup", default=None,
                    help="generators (cycles) of P for the bijection check")
    sp.set_defaults(fn=run_tower)

    sp = sub.add_parser("dihedral-certify",
                        help="triviality of descended dihedral fusion towers")
    common(sp)
    sp.add_argument("--min-order", type=int, default=8)
    sp.add_argument("--tame", action="store_true",
                    help="also certify tame quotients of the Sylow subgroup")
    sp.set_defaults(fn=run_dihedral_certify)

    sp = sub.add_parser("pathalg", help="truncated path algebra computations")
    sp.add_argument("--tame", type=int, choices=(1, 2, 3), default=None)
    sp.add_argument("--dihedral-chain", type=int, default=None, metavar="NMAX",
                    help="run the kernel-chain limit check up to D_2^NMAX")
    sp.add_argument("--quiver", default=None, help="quiver file")
    sp.add_argument("--ideal", default=None,
                    help="semicolon-separated relation generators")
    sp.add_argument("--admissible-bound", type=int, default=None)
    sp.add_argument("--degree", type=int, required=True, help="truncation s")
    sp.add_argument("--field-degree", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(fn=run_pathalg)

    sp = sub.add_parser("presentation",
                        help="bouquet presentation of a p-group algebra")
    common(sp)
    sp.add_argument("--degree", type=int, required=True, help="truncation s")
    sp.set_defaults(fn=run_presentation)

    return parser


def run_job(args):
    t0 = time.time()
    result = args.fn(args)
    checks = result.get("checks", [])
    ok = all(c["verdict"] != "fail" for c in checks)
    report = {
        "job": {
            "command": args.command,
            "arguments": {k: v for k, v in sorted(vars(args).items())
                          if k not in ("fn", "out", "timing") and v is not None},
        },
        "tool_version": __version__,
        "result": result,
        "ok": ok,
    }
    if getattr(args, "timing", False):
        report["timing_seconds"] = round(time.time() - t0, 3)
    return report


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run_job(args)
    except BlockfusionError as exc:
        report = {
            "job": {"command": args.command},
            "tool_version": __version__,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "ok": False,
        }
    text = json.dumps(report, indent=2, sort_keys=True)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
