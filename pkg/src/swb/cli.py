"""Command-line driver: ``swb <subcommand> [--config path] [overrides]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import __version__, kernels
from .borcherds import WeaklyHolomorphicInput, delta_input
from .specfun import (
    ERF_HALF_PI,
    EULER_GAMMA,
    constant_A,
    constant_A_alternative,
    constant_Btilde,
    zeta_prime,
    zeta_star_prime,
)
from .eisenstein import weight32_A0_constant
from .verify import (
    DEFAULT_TOLERANCES,
    VERIFIERS,
    MissingBValueError,
    OrdinaryCaseInputs,
    VerificationReport,
    VerifyConfig,
    assemble_main_theorem,
    divergence_fit,
    run_verifiers,
    verify_limit_case,
    verify_zagier,
)

__all__ = ["RunConfig", "ConfigError", "dumps_report_json", "main", "reports_to_csv", "run"]


class ConfigError(ValueError):
    """The run configuration could not be parsed or is invalid."""


@dataclass
class RunConfig:
    tolerances: dict = field(default_factory=dict)
    T_hat_list: list = field(default_factory=lambda: [2.0, 10.0])
    T_list: list = field(default_factory=lambda: [100.0, 10000.0])
    kappa: str = "both"
    c_max: int = 200
    input_form_path: str | None = None
    output: str = "json"
    seed: int = 20240611
    workers: int = 1
    out_dir: str = "swb_reports"
    divergence_T_hat: list = field(default_factory=lambda: [8.0, 16.0, 32.0, 64.0])

    def validate(self) -> None:
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        for k, v in self.tolerances.items():
            if not isinstance(v, (int, float)) or not v > 0:
                raise ConfigError(f"tolerance {k} must be a positive number")
        if not self.T_hat_list or not self.T_list:
            raise ConfigError("T_hat_list and T_list must be nonempty")
        if any(t < 1 for t in self.T_hat_list + self.T_list):
            raise ConfigError("truncation heights must be >= 1")
        if str(self.kappa) not in ("1", "4", "both"):
            raise ConfigError("kappa must be 1, 4 or both")
        if self.output not in ("json", "csv", "text"):
            raise ConfigError("output must be json, csv or text")
        if self.c_max < 1 or self.workers < 1:
            raise ConfigError("c_max and workers must be >= 1")

    def verify_config(self) -> VerifyConfig:
        return VerifyConfig(
            T_hat_list=tuple(self.T_hat_list),
            T_list=tuple(self.T_list),
            kappa=str(self.kappa),
            c_max=int(self.c_max),
            seed=int(self.seed),
            divergence_T_hat=tuple(self.divergence_T_hat),
            input_form_path=self.input_form_path,
            tolerances=dict(self.tolerances),
        )

    def snapshot(self) -> dict:
        d = asdict(self)
        d.pop("out_dir")
        d.pop("workers")
        d["tolerances"] = dict(sorted({**DEFAULT_TOLERANCES, **self.tolerances}.items()))
        return d


def _load_config(path: str | None) -> RunConfig:
    cfg = RunConfig()
    if path is None:
        return cfg
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    names = {f.name for f in fields(RunConfig)}
    for key, val in doc.items():
        if key not in names:
            raise ConfigError(f"unknown config field {key!r}")
        setattr(cfg, key, val)
    return cfg


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _apply_overrides(cfg: RunConfig, ns: argparse.Namespace) -> RunConfig:
    for name in ("T_hat_list", "T_list", "kappa", "c_max", "input_form_path", "output", "seed", "workers",
                 "out_dir", "divergence_T_hat"):
        val = getattr(ns, name, None)
        if val is not None:
            setattr(cfg, name, val)
    for item in getattr(ns, "tol", None) or []:
        key, _, val = item.partition("=")
        try:
            cfg.tolerances[key] = float(val)
        except ValueError as exc:
            raise ConfigError(f"bad --tol {item!r}") from exc
    cfg.kappa = str(cfg.kappa)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# serialisation


def _num(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return f"{x:.16e}"


def _encode(obj, indent: int, level: int = 0) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, complex):
        return _encode({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(str(k)) + ": " + _encode(v, indent, level + 1) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_report_json(doc) -> str:
    """JSON with every real printed to 17 significant digits."""
    return _encode(doc, 2) + "\n"


CSV_COLUMNS = ["identity_id", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass"]


def reports_to_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow([r.identity_id, _num(r.lhs.real), _num(r.lhs.imag), _num(r.rhs.real), _num(r.rhs.imag),
                    _num(r.abs_err), _num(r.rel_err), "true" if r.passed else "false"])
    return buf.getvalue()


def _reports_text(reports: list[VerificationReport]) -> str:
    lines = []
    for r in reports:
        flag = "PASS" if r.passed else "FAIL"
        kind = "hard" if r.hard else "soft"
        lines.append(f"{flag} [{kind}] {r.identity_id}: lhs={_short(r.lhs)} rhs={_short(r.rhs)} "
                     f"rel_err={r.rel_err:.3e}")
        lines.extend(f"    note: {n}" for n in r.notes)
    return "\n".join(lines) + "\n"


def _short(z: complex) -> str:
    return f"{z.real:.15g}" if z.imag == 0 else f"{z.real:.15g}{z.imag:+.3g}i"


def _write_reports(name: str, reports: list[VerificationReport], cfg: RunConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.output == "json":
        path = out / f"{name}.json"
        doc = {"verifier": name, "run_config": cfg.snapshot(), "reports": [r.to_dict() for r in reports]}
        path.write_text(dumps_report_json(doc))
    elif cfg.output == "csv":
        path = out / f"{name}.csv"
        path.write_text(reports_to_csv(reports))
    else:
        path = out / f"{name}.txt"
        path.write_text(_reports_text(reports))
    return path


def _emit(name: str, reports: list[VerificationReport], cfg: RunConfig, out) -> int:
    path = _write_reports(name, reports, cfg)
    out.write(_reports_text(reports))
    out.write(f"report written to {path}\n")
    return 0 if all(r.passed for r in reports if r.hard) else 1


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(ns, cfg: RunConfig, out) -> int:
    names = list(VERIFIERS) if ns.identity == "all" else [ns.identity]
    if ns.identity != "all" and ns.identity not in VERIFIERS:
        raise ConfigError(f"unknown verifier {ns.identity!r}; choose from {', '.join(VERIFIERS)} or all")
    vcfg = cfg.verify_config()
    reports = run_verifiers(names, vcfg, workers=cfg.workers)
    status = 0
    for name in names:
        batch = [r for r in reports if r.identity_id.split("[")[0] in _families(name)]
        status |= _emit(name, batch, cfg, out)
    hard = [r for r in reports if r.hard]
    failed = [r.identity_id for r in hard if not r.passed]
    out.write(f"hard identities: {len(hard) - len(failed)}/{len(hard)} pass\n")
    if failed:
        out.write("hard failures: " + ", ".join(failed) + "\n")
    return status


def _families(name: str) -> set[str]:
    if name == "limit_case":
        return {"limit_case", "limit_case_decomposition"}
    return {name}


def _cmd_zagier(ns, cfg: RunConfig, out) -> int:
    vcfg = cfg.verify_config()
    pairs = [(complex(ns.s), t) for t in (ns.T_hat or [2.0])] if ns.s is not None else \
        [(2.0, 2.0), (3.0, 1.5), (2.5 + 0.5j, 4.0)]
    reports = [verify_zagier(s if isinstance(s, complex) and s.imag else complex(s).real, t, vcfg) for s, t in pairs]
    return _emit("zagier", reports, cfg, out)


def _cmd_limit_case(ns, cfg: RunConfig, out) -> int:
    vcfg = cfg.verify_config()
    reports = []
    for k in vcfg.kappas:
        reports += verify_limit_case(ns.T_hat, k, vcfg)
    status = _emit("limit_case", reports, cfg, out)
    matches = [r.identity_id for r in reports if r.identity_id.startswith("limit_case[") and r.rel_err <= 0.01]
    out.write("matching (kappa, A) configuration within 1%: " + (", ".join(matches) if matches else "none") + "\n")
    return status


def _cmd_divergence(ns, cfg: RunConfig, out) -> int:
    vcfg = cfg.verify_config()
    slope, intercept, residual, rep = divergence_fit(cfg.divergence_T_hat, vcfg)
    out.write(f"slope {slope:.12g} (target {-2 * math.pi:.12g}), intercept {intercept:.12g}, "
              f"rms residual {residual:.4e}\n")
    _emit("divergence", [rep], cfg, out)
    return 0


def _parse_b_values(items) -> dict:
    out = {}
    for item in items or []:
        key, _, val = item.partition("=")
        out[key] = None if val.strip().lower() in ("", "unknown", "?") else float(val)
    return out


def _cmd_assemble(ns, cfg: RunConfig, out) -> int:
    f = WeaklyHolomorphicInput.load(cfg.input_form_path) if cfg.input_form_path else delta_input()
    inputs = OrdinaryCaseInputs(f=f, b_values=_parse_b_values(ns.b), T_hat=ns.T_hat)
    try:
        res = assemble_main_theorem(inputs)
    except MissingBValueError as exc:
        raise ConfigError(f"{exc.args[0]}; pass --b M=VALUE or --b M=unknown") from exc
    if cfg.output == "json":
        out.write(dumps_report_json(res))
        return 0
    out.write(f"main theorem expansion at T_hat = {res['T_hat']:g}\n")
    for t in res["terms"]:
        out.write(f"  {t['label']:<32s} {t['value']: .15e}  [{t['provenance']}]\n")
    for t in res["symbolic"]:
        out.write(f"  {t['label']:<32s} {t['coefficient']: .15e} * {t['unknown']}\n")
    out.write(f"  log(T_hat) coefficient            {res['log_T_hat_coefficient']: .15e}\n")
    out.write(f"  numeric total                     {res['numeric_total']: .15e}\n")
    return 0


def constants_table() -> list[tuple[str, float]]:
    return [
        ("A", constant_A()),
        ("A (proof assembly)", constant_A_alternative()),
        ("B_tilde", constant_Btilde()),
        ("gamma", EULER_GAMMA),
        ("zeta'(-1)", zeta_prime(-1.0)),
        ("zeta'(2)", zeta_prime(2.0)),
        ("zeta*'(2)", zeta_star_prime(2.0)),
        ("zeta*'(-1)", zeta_star_prime(-1.0)),
        ("erf(sqrt(pi/2))", ERF_HALF_PI),
        ("weight 3/2 constant term", weight32_A0_constant()),
    ]


def _cmd_constants(ns, cfg: RunConfig, out) -> int:
    rows = constants_table()
    if cfg.output == "json":
        out.write(dumps_report_json({k: v for k, v in rows}))
    elif cfg.output == "csv":
        out.write("name,value\n" + "".join(f"\"{k}\",{_num(v)}\n" for k, v in rows))
    else:
        for k, v in rows:
            out.write(f"{k:<40s} {v: .16e}\n")
    return 0


def _cmd_selftest(ns, cfg: RunConfig, out) -> int:
    vcfg = cfg.verify_config()
    out.write(f"swb {__version__}, kernel backend: {kernels.BACKEND}\n")
    reports = run_verifiers(["lemma212", "lemma243", "prop185", "integralsola", "eisenstein_modes"], vcfg)
    out.write(_reports_text(reports))
    ok = all(r.passed for r in reports)
    out.write("selftest " + ("passed" if ok else "FAILED") + "\n")
    return 0 if ok else 1


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--T-hat-list", dest="T_hat_list", type=_float_list)
    common.add_argument("--T-list", dest="T_list", type=_float_list)
    common.add_argument("--kappa", choices=["1", "4", "both"])
    common.add_argument("--c-max", dest="c_max", type=int)
    common.add_argument("--input-form", dest="input_form_path")
    common.add_argument("--output", choices=["json", "csv", "text"])
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--out-dir", dest="out_dir")
    common.add_argument("--divergence-T-hat", dest="divergence_T_hat", type=_float_list)
    common.add_argument("--tol", action="append", metavar="ID=VALUE", help="override one tolerance")

    p = argparse.ArgumentParser(prog="swb", description="Numerical verification workbench.")
    p.add_argument("--version", action="version", version=f"swb {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run one verifier or all")
    v.add_argument("identity", help="verifier id or 'all'")
    z = sub.add_parser("zagier", parents=[common], help="truncated Rankin-Selberg checks")
    z.add_argument("--s", type=complex)
    z.add_argument("--T-hat", dest="T_hat", type=_float_list)
    lc = sub.add_parser("limit-case", parents=[common], help="limit-case decomposition and comparison")
    lc.add_argument("--T-hat", dest="T_hat", type=float, default=2.0)
    sub.add_parser("divergence", parents=[common], help="log-divergence fit of the Delta integral")
    a = sub.add_parser("assemble", parents=[common], help="print the main theorem's expansion")
    a.add_argument("--T-hat", dest="T_hat", type=float, default=2.0)
    a.add_argument("--b", action="append", metavar="M=VALUE", help="b(m) constant (VALUE may be 'unknown')")
    sub.add_parser("constants", parents=[common], help="print the closed-form constants")
    sub.add_parser("selftest", parents=[common], help="quick smoke test")
    return p


_COMMANDS = {
    "verify": _cmd_verify,
    "zagier": _cmd_zagier,
    "limit-case": _cmd_limit_case,
    "divergence": _cmd_divergence,
    "assemble": _cmd_assemble,
    "constants": _cmd_constants,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ns = _parser().parse_args(argv)
    try:
        cfg = _apply_overrides(_load_config(ns.config), ns)
        if ns.command == "constants" and ns.output is None and ns.config is None:
            cfg.output = "text"
        return _COMMANDS[ns.command](ns, cfg, out)
    except ConfigError as exc:
        sys.stderr.write(f"swb: configuration error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
