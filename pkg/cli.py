"""
lpchange command line.

    python cli.py se-models p1.lp
    python cli.py revise --method pm p.lp q.lp
    python cli.py revise --method ens --ensconcement e4.ens p.lp q.lp
    python cli.py revise --compare pm,ens,distance p.lp q.lp
    python cli.py check --operators pm,ens,distance --postulates all --format table

Reports go to stdout, logs to stderr. Exit codes: 0 success, 1 domain or
file errors, 2 usage errors.
"""

import json
import sys
from typing import List, Optional, Tuple

import click
import requests

import config
import logbot
import report
from baselines import c_update_equivalent, materialize
from corpus import DEFAULT_POOL, Corpus
from counterexamples import check_counterexamples
from ensconcement import default_ensconcement, read_ensconcement, validate_ensconcement
from localize import localized_change, relevant_modules
from operators import CONTRACTION, DISTANCE, ENS, PM, PM_AS, REVISION, Operator, operator_ids
from partialmeet import MAXICHOICE, SINGLE, SINGLE_CHOICE, parse_policy
from postulates import (
    check_characterizations,
    check_identity_bridges,
    check_localization,
    check_oracles,
    check_postulates,
    check_screened_bridges,
    select_postulates,
)
from program import LPError, Program, Vocabulary, print_program, read_program
from semantics import (
    SESet,
    Semantic,
    answer_sets,
    answer_sets_by_reduct,
    canonical_program,
    implies_s,
    interpretation_text,
    pair_text,
    se_from_json,
    se_models,
    se_to_json,
    strongly_equivalent,
    vocabulary_for,
)

SUITES = ("postulates", "identities", "characterizations", "localization", "screened", "oracles", "counterexamples")


class LPGroup(click.Group):
    """Maps domain and file errors to exit code 1."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (LPError, OSError) as e:
            logbot.logs(f">>> /!\\ {e}", True)
            ctx.exit(1)


# -----------------------
# Helpers
# -----------------------
def _run_config(ctx: click.Context, command: str, **flags) -> config.RunConfig:
    obj = ctx.obj or {}
    given = {k: v for k, v in flags.items() if v is not None and v is not False and v != ()}
    for k in ("format", "vocab"):
        if obj.get(k) is not None:
            given[k] = obj[k]
    given["command"] = command
    return config.RunConfig.from_sources(obj.get("file_values"), given).validate()


def _vocab(cfg: config.RunConfig) -> Optional[Vocabulary]:
    return Vocabulary.parse(cfg.vocab) if cfg.vocab else None


def _read_programs(paths, cfg: config.RunConfig) -> Tuple[List[Program], Vocabulary]:
    declared = _vocab(cfg)
    programs, atoms = [], ()
    for path in paths:
        prog, v = read_program(path, declared)
        programs.append(prog)
        atoms += v.atoms
    return programs, Vocabulary(atoms)


def _read_se(path: str) -> SESet:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise LPError(f"{path}: {e}")
    return se_from_json(data)


def _emit(text: str):
    click.echo(text, nl=False)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _interpretations(models) -> List[str]:
    return sorted(("{" + interpretation_text(m) + "}" for m in models), key=lambda s: (len(s), s))


# -----------------------
# Group
# -----------------------
@click.group(cls=LPGroup)
@click.option("--config", "config_path", default=None, help="JSON file with default option values.")
@click.option("--format", "fmt", type=click.Choice(config.FORMATS), default=None, help="Output format.")
@click.option("--vocab", default=None, help="Vocabulary, e.g. 'a,b'.")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors.")
@click.pass_context
def main(ctx, config_path, fmt, vocab, quiet):
    """Belief change for logic programs under SE models."""
    if quiet:
        logbot.set_quiet(True)
    ctx.obj = {"file_values": {}, "format": fmt, "vocab": vocab}
    try:
        ctx.obj["file_values"] = config.load_config_file(config_path)
    except (LPError, OSError) as e:
        logbot.logs(f">>> /!\\ {e}", True)
        ctx.exit(1)


# -----------------------
# Semantics
# -----------------------
@main.command("se-models")
@click.argument("program")
@click.pass_context
def se_models_cmd(ctx, program):
    """SE models of PROGRAM."""
    cfg = _run_config(ctx, "se-models", inputs=(program,))
    (p,), vocab = _read_programs(cfg.inputs, cfg)
    s = se_models(p, vocab)
    if cfg.format == "json":
        _emit(_dump(se_to_json(s)))
    elif cfg.format == "table":
        _emit("".join(f"({pair_text(x)},{pair_text(y)})\n" for x, y in s.members))
    else:
        _emit(f"{s}\n")


@main.command("answer-sets")
@click.argument("program")
@click.option("--by-reduct", is_flag=True, help="Compute via minimal models of the reduct.")
@click.pass_context
def answer_sets_cmd(ctx, program, by_reduct):
    """Answer sets of PROGRAM."""
    cfg = _run_config(ctx, "answer-sets", inputs=(program,))
    (p,), vocab = _read_programs(cfg.inputs, cfg)
    models = (answer_sets_by_reduct if by_reduct else answer_sets)(p, vocab)
    if cfg.format == "json":
        _emit(_dump([sorted(m) for m in sorted(models, key=lambda m: (len(m), sorted(m)))]))
    else:
        _emit("".join(f"{m}\n" for m in _interpretations(models)))


@main.command()
@click.argument("first")
@click.argument("second")
@click.pass_context
def equiv(ctx, first, second):
    """Strong equivalence, mutual implication and C-update equivalence."""
    cfg = _run_config(ctx, "equiv", inputs=(first, second))
    (p1, p2), vocab = _read_programs(cfg.inputs, cfg)
    result = {
        "strongly_equivalent": strongly_equivalent(p1, p2, vocab),
        "first_implies_second": implies_s(p1, p2, vocab),
        "second_implies_first": implies_s(p2, p1, vocab),
        "c_update_equivalent": c_update_equivalent(p1, p2, vocab),
    }
    if cfg.format == "json":
        _emit(_dump(result))
    else:
        _emit("".join(f"{k.replace('_', ' ')}: {'yes' if v else 'no'}\n" for k, v in result.items()))


@main.command()
@click.argument("se_file")
@click.pass_context
def canonical(ctx, se_file):
    """Canonical program of an SE-set JSON file."""
    cfg = _run_config(ctx, "canonical", inputs=(se_file,))
    prog = canonical_program(_read_se(se_file))
    if cfg.format == "json":
        _emit(_dump([str(r) for r in prog.sorted()]))
    else:
        _emit(print_program(prog))


# -----------------------
# Change
# -----------------------
def _load_inputs(cfg: config.RunConfig) -> Tuple[Program, Semantic, Vocabulary]:
    if cfg.q_se_models:
        (p,), _ = _read_programs(cfg.inputs[:1], cfg)
        q = _read_se(cfg.q_se_models)
        return p, q, vocabulary_for(p, q)
    if len(cfg.inputs) != 2:
        raise click.UsageError("expected PROGRAM and INPUT (or --q-se-models FILE)")
    (p, q), vocab = _read_programs(cfg.inputs, cfg)
    return p, q, vocab


def _operator(method: str, kind: str, cfg: config.RunConfig, p: Program, vocab: Vocabulary) -> Operator:
    policy = parse_policy(cfg.policy)
    if method == ENS:
        if cfg.ensconcement:
            e = validate_ensconcement(p, read_ensconcement(cfg.ensconcement, p).levels, vocab)
        else:
            e = default_ensconcement(p, vocab)
        return Operator(ENS, kind, ensconcement=e)
    if method == PM_AS and policy.kind not in (SINGLE_CHOICE, MAXICHOICE):
        policy = SINGLE
    if method in (DISTANCE, PM_AS):
        return Operator(method, kind, policy if method == PM_AS else parse_policy("full"))
    return Operator(PM, kind, policy)


def _outcome_lines(op: Operator, p: Program, q: Semantic, vocab: Vocabulary, cfg: config.RunConfig) -> List[str]:
    if op.name == DISTANCE:
        s = op.outcome(p, q, vocab)
        return [str(r) for r in materialize(s).sorted()] if cfg.materialize else [str(s)]
    out = localized_change(p, op, q, vocab) if cfg.localized else op.apply(p, q, vocab)
    return [str(r) for r in out.sorted()]


def _change(ctx, kind: str, program: str, input_: Optional[str], flags: dict):
    command = "revise" if kind == REVISION else "contract"
    cfg = _run_config(ctx, command, inputs=tuple(x for x in (program, input_) if x), **flags)
    p, q, vocab = _load_inputs(cfg)
    logbot.logs(f"========= {command.upper()} =========", log_to_discord=False)

    if cfg.compare:
        rows = []
        for method in operator_ids(cfg.compare):
            if method not in config.METHODS:
                raise config.ConfigError(f"unknown method '{method}'")
            if kind == CONTRACTION and method in (DISTANCE, PM_AS):
                raise config.ConfigError(f"method '{method}' only revises")
            op = _operator(method, kind, cfg, p, vocab)
            rows.append((op.describe(), _outcome_lines(op, p, q, vocab, cfg)))
        _emit(report.render_compare(rows, cfg.format))
        return

    op = _operator(cfg.method, kind, cfg, p, vocab)
    if op.name == DISTANCE and not cfg.materialize:
        s = op.outcome(p, q, vocab)
        _emit(_dump(se_to_json(s)) if cfg.format == "json" else f"{s}\n")
        return
    lines = _outcome_lines(op, p, q, vocab, cfg)
    if cfg.format == "json":
        _emit(_dump({"operator": op.describe(), "localized": cfg.localized, "program": lines}))
    else:
        _emit("".join(f"{line}\n" for line in lines))


def _change_options(fn):
    options = [
        click.argument("program"),
        click.argument("input_", metavar="INPUT", required=False),
        click.option("--method", type=click.Choice(config.METHODS), default=None),
        click.option("--policy", default=None, help="full | maxichoice | single | relational[:size|:weights.json]"),
        click.option("--ensconcement", default=None, help="Ensconcement file (.ens)."),
        click.option("--auto-ensconcement", is_flag=True, help="Use the default ensconcement of PROGRAM."),
        click.option("--localized", is_flag=True, help="Change relevant modules only."),
        click.option("--q-se-models", default=None, help="Use an SE-set JSON file as INPUT."),
        click.option("--materialize", is_flag=True, help="Print distance results as programs."),
        click.option("--compare", default=None, help="Comma-separated methods shown side by side."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@main.command()
@_change_options
@click.pass_context
def revise(ctx, program, input_, **flags):
    """Revise PROGRAM by INPUT."""
    _change(ctx, REVISION, program, input_, flags)


@main.command()
@_change_options
@click.pass_context
def contract(ctx, program, input_, **flags):
    """Contract INPUT from PROGRAM."""
    _change(ctx, CONTRACTION, program, input_, flags)


@main.command()
@click.argument("program")
@click.argument("input_", metavar="INPUT")
@click.pass_context
def modules(ctx, program, input_):
    """Modules of PROGRAM relevant to INPUT."""
    cfg = _run_config(ctx, "modules", inputs=(program, input_))
    (p, q), _ = _read_programs(cfg.inputs, cfg)
    family = relevant_modules(p, q)
    if cfg.format == "json":
        _emit(_dump({
            "modules": [
                {"rule": str(m.anchor_rule), "atom": m.anchor_atom, "rules": [str(r) for r in m.rules.sorted()]}
                for m in family.modules
            ],
            "residue": [str(r) for r in family.residue.sorted()],
        }))
        return
    lines = [str(m) for m in family.modules]
    lines.append(f"residue = {{{', '.join(str(r) for r in family.residue.sorted())}}}")
    _emit("".join(f"{line}\n" for line in lines))


# -----------------------
# Harness
# -----------------------
def _suites(spec: str) -> Tuple[str, ...]:
    names = operator_ids(spec)
    if "all" in names:
        return SUITES
    for n in names:
        if n not in SUITES:
            raise config.ConfigError(f"unknown suite '{n}' (expected {', '.join(SUITES)} or all)")
    return tuple(s for s in SUITES if s in names)


def _corpus(cfg: config.RunConfig) -> Corpus:
    caps = {"max_rules": cfg.max_rules, "max_input_rules": cfg.max_input_rules}
    vocab = _vocab(cfg)
    if cfg.pool:
        return Corpus.from_file(cfg.pool, vocab, **caps)
    return Corpus.from_text(DEFAULT_POOL, vocab or Vocabulary.of("a", "b"), **caps)


def _postulate_reports(cfg: config.RunConfig, corpus: Corpus) -> list:
    out = []
    policy = parse_policy(cfg.policy)
    for name in operator_ids(cfg.operators):
        if name not in config.METHODS:
            raise config.ConfigError(f"unknown operator '{name}'")
        for kind in (REVISION, CONTRACTION):
            if kind == CONTRACTION and name in (DISTANCE, PM_AS):
                continue
            ids = select_postulates(cfg.postulates, kind)
            if not ids:
                continue
            if name == PM_AS:
                op = Operator(PM_AS, kind, policy if policy.kind in (SINGLE_CHOICE, MAXICHOICE) else SINGLE)
            else:
                op = Operator(name, kind, policy if name == PM else parse_policy("full"))
            out += check_postulates(op, corpus, ids, cfg.workers)
    return out


@main.command()
@click.option("--operators", default=None, help="Comma-separated operators (pm,ens,distance,pm-as).")
@click.option("--postulates", default=None, help="'all' or ids such as r7,c3b,(*8).")
@click.option("--suites", default=None, help=f"'all' or some of {','.join(SUITES)}.")
@click.option("--policy", default=None, help="Selection policy for pm.")
@click.option("--pool", default=None, help="Rule pool file (default: the built-in pool over a, b).")
@click.option("--max-rules", type=int, default=None)
@click.option("--max-input-rules", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--notify", is_flag=True, help="Post a summary embed to DISCORD_WEBHOOK_URL.")
@click.pass_context
def check(ctx, **flags):
    """Run the harness over a corpus."""
    cfg = _run_config(ctx, "check", **flags)
    corpus = _corpus(cfg)
    logbot.logs("========= CHECK =========", log_to_discord=False)
    logbot.logs(f"[Harness] corpus: {corpus.describe()}", log_to_discord=False)

    reports = []
    for suite in _suites(cfg.suites):
        if suite == "postulates":
            reports += _postulate_reports(cfg, corpus)
        elif suite == "identities":
            reports += check_identity_bridges(corpus, cfg.workers)
        elif suite == "characterizations":
            reports += check_characterizations(corpus, cfg.workers)
        elif suite == "localization":
            reports += check_localization(corpus, cfg.workers)
        elif suite == "screened":
            reports += check_screened_bridges(corpus, cfg.workers)
        elif suite == "oracles":
            reports += check_oracles(corpus, cfg.samples, cfg.seed)
        else:
            reports += check_counterexamples()

    _emit(report.render_reports(reports, cfg.format))
    if cfg.format != "json":
        _emit(f"\ncorpus: {corpus.describe()}\n")
    counts = report.summary(reports)
    logbot.logs(f"[Harness] ✅ holds {counts['holds']} • fails {counts['fails']} • skipped {counts['skipped']}")

    if cfg.notify:
        try:
            if report.post_discord(report.build_discord_embed(reports, corpus=corpus.describe())):
                logbot.logs("[Harness] Posted to Discord.", log_to_discord=False)
            else:
                logbot.logs("[Harness] No DISCORD_WEBHOOK_URL configured; skip posting.", log_to_discord=False)
        except (RuntimeError, requests.RequestException) as e:
            logbot.logs(f">>> /!\\ Discord post failed: {e}", True)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        main.main(args=argv, prog_name="lpchange")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return 0


if __name__ == "__main__":
    sys.exit(run())
