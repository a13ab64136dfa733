"""Command-line entry point: ``metator <subcommand> --config cfg.json``.

Every subcommand produces a list of records.  A record names a check, a
short descriptive anchor for the statement it verifies, a status ("pass",
"fail" or "info") and exact data.  The exit code is 0 iff no record failed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Dict, List

from . import heisenberg as hz
from .adelic import CosetModel, GlobalCharacter
from .config import SessionConfig, load_config
from .cyclotomic import cyc_field, value_order
from .errors import MetatorError
from .extension import (AdelePoint, ExtElement, Extension, RationalTorusPoint, center_test, check_B,
                        choose_B, random_point)
from .fields import DlogTable, field_of_order
from .hecke import LocalCharacter, LocalHecke, extend_local, sharp_box, spherical_eigenvalue
from .lattice import (DegeneratePairing, in_sharp_bruteforce, residual_pairing, sharp_sublattice,
                      validate_form)
from .linalg import proportional
from .symbols import RationalFunction, parse_place, random_rational, reciprocity_check

SUBCOMMANDS = ("lattice-info", "symbols", "extension", "satake", "theta", "heisenberg")


@dataclass
class Record:
    check: str
    anchor: str
    status: str
    data: Dict = field(default_factory=dict)

    def to_json(self):
        return {"check": self.check, "anchor": self.anchor, "status": self.status, "data": self.data}


def _status(ok):
    return "pass" if ok else "fail"


class Session:
    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg
        self.k = field_of_order(cfg.q)
        self.form = validate_form(cfg.kappa)
        self.sharp = sharp_sublattice(self.form, cfg.n)
        self.B = choose_B(self.form)
        self.ext = Extension(self.k, cfg.n, self.B, table=DlogTable(self.k, cfg.generator), T=cfg.T)
        self.ext1 = Extension(self.k, cfg.n, self.B, table=self.ext.table, T=1)
        self.cyc = cyc_field(value_order(cfg.n, cfg.q))
        self.places = [parse_place(self.k, x) for x in cfg.S]
        self.rng = random.Random(cfg.seed)

    def default_chi(self):
        """Per-place characters of the centre: config values, else e_i at every place."""
        N = self.cyc.N
        if self.cfg.chi is not None:
            rows = self.cfg.chi
        else:
            rows = [[ei % N for ei in self.sharp.e] for _ in self.places]
        return GlobalCharacter(tuple(LocalCharacter(N, tuple(v % N for v in row)) for row in rows))


# --- subcommands ----------------------------------------------------------------------------

def cmd_lattice_info(s: Session) -> List[Record]:
    sh = s.sharp
    r = s.form.rank
    side = 3 * s.cfg.n
    box = itertools.product(range(-(side // 2), side - side // 2), repeat=r) if r <= 2 else \
        itertools.product(range(-s.cfg.n, s.cfg.n + 1), repeat=r)
    agree = all(sh.contains(mu) == in_sharp_bruteforce(s.form, s.cfg.n, mu) for mu in box)
    prod = 1
    for ei in sh.e:
        prod *= ei
    out = [Record("sharp_sublattice", "sharp sublattice and elementary values e_i",
                  _status(agree and prod == sh.index),
                  {"d": list(sh.d), "e": list(sh.e), "index": sh.index,
                   "sharp_basis": [list(row) for row in sh.sharp_basis], "bruteforce_agrees": agree})]
    try:
        rp = residual_pairing(s.form, s.cfg.n, sh)
        out.append(Record("residual_pairing", "nondegenerate pairing on Lambda/Lambda-sharp", "pass",
                          {"quotient": rp.quotient, "beta": rp.beta, "radical_order": 1}))
    except DegeneratePairing as exc:
        out.append(Record("residual_pairing", "nondegenerate pairing on Lambda/Lambda-sharp", "fail",
                          {"error": str(exc)}))
    return out


def cmd_symbols(s: Session) -> List[Record]:
    rows = []
    ok = True
    for _ in range(s.cfg.samples):
        f = random_rational(s.k, s.rng, 4)
        g = random_rational(s.k, s.rng, 4)
        if f.is_zero() or g.is_zero():
            continue
        prod, local = reciprocity_check(f, g)
        good = prod.v == s.k.one
        ok = ok and good
        rows.append({"f": repr(f), "g": repr(g),
                     "locals": {x.label(): s.k.render(v.v) for x, v in local.items()},
                     "product": s.k.render(prod.v)})
    return [Record("reciprocity", "product of local tame symbols of a rational pair is 1",
                   _status(ok), {"pairs": len(rows), "table": rows})]


def cmd_extension(s: Session) -> List[Record]:
    ext, r, S = s.ext, s.form.rank, s.places
    pts = [random_point(r, S, s.rng, s.cfg.T) for _ in range(3 * s.cfg.samples)]
    triples = [pts[i:i + 3] for i in range(0, len(pts), 3)]
    one = AdelePoint.identity(r)
    cocycle_ok = normal_ok = comm_ok = alt_ok = bimult_ok = True
    for a, b, c in triples:
        cocycle_ok &= (ext.cocycle(a, b) + ext.cocycle(a * b, c) - ext.cocycle(a, b * c) - ext.cocycle(b, c)) % ext.n == 0
        normal_ok &= ext.cocycle(one, a) == 0 == ext.cocycle(a, one)
        A, Bq = ExtElement(0, a), ExtElement(0, b)
        cm = ext.commutator(A, Bq)
        comm_ok &= cm == ext.commutator_group_law(A, Bq) == ext.commutator_kappa(A, Bq)
        alt_ok &= ext.commutator(A, A) == 0 and (cm + ext.commutator(Bq, A)) % ext.n == 0
        C = ExtElement(0, c)
        bimult_ok &= ext.commutator(ExtElement(0, a * b), C) == (ext.commutator(A, C) + ext.commutator(Bq, C)) % ext.n
    # constants: the integral and rational splittings agree and the cocycle vanishes
    split_ok = True
    for _ in range(s.cfg.samples):
        cs = [s.rng.randrange(1, s.k.size) for _ in range(r)]
        h = RationalTorusPoint(tuple(RationalFunction.constant(s.k, c) for c in cs))
        rat = ext.split_rational(h, S)
        integ = ext.split_integral(rat.point)
        split_ok &= rat == integ and ext.cocycle(rat.point, rat.point) == 0
    # centrality of t^lam for lam in the sharp sublattice
    x0 = S[0]
    central = []
    for i in range(r):
        lam = [s.sharp.sharp_basis[j][i] for j in range(r)]
        pt = AdelePoint.monomial(x0, lam, s.cfg.T)
        by_test = center_test(pt, s.sharp)
        by_comm = all(ext.commutator(ExtElement(0, pt), ExtElement(0, p)) == 0 for p in pts[:20])
        central.append({"lambda": lam, "center_test": by_test, "commutes": by_comm})
    central_ok = all(c["center_test"] and c["commutes"] for c in central)
    n_s = len(triples)
    return [
        Record("B_choice", "B + B^t = kappa", _status(check_B(s.B, s.form)), {"B": [list(r_) for r_ in s.B]}),
        Record("cocycle_identity", "normalized 2-cocycle from tame symbols",
               _status(cocycle_ok and normal_ok), {"samples": n_s}),
        Record("commutator", "commutator equals the kappa-pairing of symbols", _status(comm_ok), {"samples": n_s}),
        Record("commutator_alternating", "commutator is alternating and bimultiplicative",
               _status(alt_ok and bimult_ok), {"samples": n_s}),
        Record("splitting_constants", "integral and rational splittings agree on T(k)", _status(split_ok),
               {"samples": s.cfg.samples}),
        Record("center", "t^lam is central for lam in Lambda-sharp", _status(central_ok), {"checks": central}),
    ]


def cmd_satake(s: Session) -> List[Record]:
    x0 = next((x for x in s.places if not x.is_infinite), s.places[0])
    H = LocalHecke(s.form, s.sharp, s.ext1, s.cyc, x0)
    box = sharp_box(s.sharp, s.cfg.satake_radius)
    ok = True
    try:
        for lam in box:
            for mu in box:
                prod = H.convolve(H.basis(lam), H.basis(mu))
                ok &= prod == H.basis(tuple(a + b for a, b in zip(lam, mu)))
        small = sharp_box(s.sharp, 1)
        table = [{"lambda": list(a), "mu": list(b),
                  "product": sorted(list(k_) for k_ in H.convolve(H.basis(a), H.basis(b)).coeffs)}
                 for a in small for b in small]
        conv_status = _status(ok)
        conv_data = {"radius": s.cfg.satake_radius, "pairs": len(box) ** 2, "table": table}
    except MetatorError as exc:
        conv_status, conv_data = "fail", {"error": str(exc)}
    out = [Record("satake_product", "h_lam * h_mu = h_(lam+mu) by integral model and shift rule",
                  conv_status, conv_data)]
    dim = H.local_dimension()
    sph = H.spherical_dimension()
    out.append(Record("local_dimension", "dim of the induced representation is e", _status(dim == s.sharp.index),
                      {"dimension": dim, "e": s.sharp.index}))
    out.append(Record("spherical_dimension", "spherical vectors form a line", _status(sph == 1), {"dimension": sph}))
    chi = s.default_chi().chi[0]
    eig = []
    try:
        chibar = extend_local(chi, s.sharp)
        for lam in sharp_box(s.sharp, 1):
            model = H.spherical_eigenvalue_model(lam, chibar)
            formula = spherical_eigenvalue(lam, chi, s.sharp, s.cyc)
            eig.append({"lambda": list(lam), "eigenvalue": formula.to_json(), "agrees": model == formula})
        out.append(Record("spherical_eigenvalue", "h_lam acts on the spherical vector by chi(lam)^-1",
                          _status(all(e["agrees"] for e in eig)), {"checks": eig}))
    except MetatorError as exc:
        out.append(Record("spherical_eigenvalue", "h_lam acts on the spherical vector by chi(lam)^-1",
                          "fail", {"error": str(exc)}))
    return out


def cmd_theta(s: Session, mu=None) -> List[Record]:
    model = CosetModel(s.form, s.sharp, s.ext1, s.cyc, s.places)
    r = s.form.rank
    chi = s.default_chi()
    out = []
    try:
        chi = model.extend_character(chi)
    except MetatorError as exc:
        return [Record("character", "chi valid with a compatible extension", "fail", {"error": str(exc)})]
    out.append(Record("character", "chi valid with a compatible extension", "pass", chi.to_json()))
    # dimensions over a box of degrees
    dims = []
    dims_ok = True
    for m in itertools.product(range(-2, 3), repeat=r):
        d, _ = model.nonramified_space(m, chi, s.cfg.radius)
        want = 1 if s.sharp.contains(m) else 0
        dims_ok &= d == want
        dims.append({"mu": list(m), "dim": d})
    out.append(Record("nonramified_dimensions", "degree-mu nonramified space vanishes off Lambda-sharp, else a line",
                      _status(dims_ok), {"dims": dims}))
    # the requested degree
    if mu is None:
        mu = s.cfg.mu if s.cfg.mu is not None else [s.sharp.sharp_basis[j][0] for j in range(r)]
    mu = tuple(mu)
    reps = model.enumerate_cosets(mu)
    dim, basis = model.nonramified_space(mu, chi, s.cfg.radius)
    th = model.theta(chi.chibar, mu, s.cfg.bound, s.cfg.radius)
    keys = sorted(th.values)
    support = [list(map(list, kk)) for kk in th.support()]
    prop = None
    if dim == 1:
        vec = [s.cyc.zeta_power(basis[0][kk]) if kk in basis[0] else s.cyc.zero() for kk in keys]
        c = proportional(th.vector(keys), vec)
        prop = c is not None and not c.is_zero()
    theta_ok = (prop is True) if dim == 1 else not th.support()
    eigen = []
    if dim == 1:
        for lam in sharp_box(s.sharp, 1):
            for xi, x in enumerate(s.places):
                eigen.append({"lambda": list(lam), "place": x.label(),
                              "passed": model.hecke_eigen_check(th, lam, xi, chi.chibar, s.cfg.bound)})
    out.append(Record("theta", "theta = S(phi) spans the nonramified space",
                      _status(theta_ok and all(e["passed"] for e in eigen)),
                      {"mu": list(mu), "dim": dim, "reps": [list(map(list, rp)) for rp in reps],
                       "support_orbit": support,
                       "theta_values": [{"D": list(map(list, kk)), "value": th.values[kk].to_json()} for kk in keys],
                       "proportional_to_basis": prop, "eigen_checks": eigen}))
    orbits = model.orbit_count(mu)
    out.append(Record("orbit_count", "centre orbits on the coset space number e", _status(orbits == s.sharp.index),
                      {"orbits": orbits, "e": s.sharp.index}))
    # direct sum over characters of the degree-zero centre
    try:
        valid = model.valid_characters()
        total = sum(model.nonramified_space(mu, c, s.cfg.radius)[0] for c in valid)
        plain, _ = model.nonramified_space(mu, None, s.cfg.radius)
        out.append(Record("direct_sum", "nonramified space is the sum of its chi-parts", _status(total == plain),
                          {"characters": len(valid), "sum": total, "without_chi": plain}))
    except MetatorError as exc:
        out.append(Record("direct_sum", "nonramified space is the sum of its chi-parts", "fail", {"error": str(exc)}))
    # reported only: commutators on lifts of T(F) intersected with Div * Z
    gens = model._kernel_generators(model.in_div_center)
    iso = all((model.coord_cocycle(a[1:], b[1:]) - model.coord_cocycle(b[1:], a[1:])) % s.cfg.n == 0
              for a in gens for b in gens)
    out.append(Record("isotropy_status", "rational part of Div * Z is isotropic (reported, not asserted)", "info",
                      {"isotropic": iso, "generators": len(gens)}))
    return out


def cmd_heisenberg(s: Session, genus=None) -> List[Record]:
    g = s.cfg.genus if genus is None else genus
    anchor = "unique central irrep of the finite Heisenberg group has dimension e^g"
    try:
        rp = residual_pairing(s.form, s.cfg.n, s.sharp)
        model = hz.build_model(rp, g)
        rep = hz.report(model)
    except MetatorError as exc:
        return [Record("heisenberg", anchor, "fail", {"genus": g, "error": str(exc)})]
    eg = 1
    for ei in model.Q:
        eg *= ei
    eg **= g
    ok = (rep["nondegenerate"] and rep["H_order"] == eg and rep["irrep_dim"] == eg and rep["irreducible"]
          and rep["commutant_dim"] == 1 and rep["central_irreps"] == 1 and rep["multiplicity"] == eg
          and rep["polarization_independent"] and rep["second_lagrangian_agrees"] and rep["dimension_count"])
    splits = rep.pop("splits_over_H")
    out = [Record("heisenberg", anchor, _status(ok), rep),
           Record("splitting_over_H", "extension restricted to the Lagrangian splits (reported, not asserted)",
                  "info", {"splits": splits})]
    return out


def run(subcommand: str, cfg: SessionConfig, mu=None, genus=None) -> List[Record]:
    s = Session(cfg)
    table = {
        "lattice-info": lambda: cmd_lattice_info(s),
        "symbols": lambda: cmd_symbols(s),
        "extension": lambda: cmd_extension(s),
        "satake": lambda: cmd_satake(s),
        "theta": lambda: cmd_theta(s, mu),
        "heisenberg": lambda: cmd_heisenberg(s, genus),
    }
    if subcommand == "all":
        out = []
        for name in SUBCOMMANDS:
            out.extend(table[name]())
        return out
    if subcommand not in table:
        raise ValueError(f"unknown subcommand {subcommand!r}")
    return table[subcommand]()


def render(records: List[Record], cfg: SessionConfig, subcommand: str, fmt: str) -> str:
    header = {"command": subcommand, "config_hash": cfg.digest(), "seed": cfg.seed}
    if fmt == "json":
        lines = [json.dumps(header, sort_keys=True)]
        lines += [json.dumps(r.to_json(), sort_keys=True) for r in records]
    else:
        lines = [f"metator {subcommand}  config={header['config_hash']}  seed={cfg.seed}"]
        for r in records:
            lines.append(f"[{r.status.upper():4}] {r.check}: {r.anchor}")
            lines.append("       " + json.dumps(r.data, sort_keys=True))
        failed = sum(r.status == "fail" for r in records)
        lines.append(f"{len(records) - failed}/{len(records)} records without failure")
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="metator", description="Exact checks for tame-symbol extensions of tori.")
    p.add_argument("subcommand", choices=SUBCOMMANDS + ("all",))
    p.add_argument("--config", required=True, help="JSON configuration file")
    p.add_argument("--seed", type=int, default=None, help="override the configured random seed")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--mu", default=None, help="degree for theta, comma separated")
    p.add_argument("--genus", type=int, default=None, help="genus for heisenberg")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (MetatorError, OSError) as exc:
        print(f"metator: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        cfg.seed = args.seed
    mu = [int(x) for x in args.mu.split(",")] if args.mu else None
    if mu is not None and len(mu) != len(cfg.kappa):
        print("metator: --mu must have one entry per lattice coordinate", file=sys.stderr)
        return 2
    records = run(args.subcommand, cfg, mu=mu, genus=args.genus)
    sys.stdout.write(render(records, cfg, args.subcommand, args.format))
    return 0 if all(r.status != "fail" for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
