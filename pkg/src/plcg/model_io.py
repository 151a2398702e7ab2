"""Model files: versioned header, then one tab-separated record per line.

Record kinds:
  RULE  <lhs> <rhs...> <count>                      (PCFG)
  SHIFT <gc> <lc> <count>                           (PLCG / delta)
  ATT   <lc> <gc> <attach_count> <total_count>      (PLCG / delta)
  PROJ  <gc> <lc> <lhs> <rhs...> <count>            (PLCG / delta)
  DELTA <depth> <lc> <gc> <delta> <count>           (delta)
  DPROJ <depth> <delta> <lc> <gc> <lhs> <rhs...> <count>  (delta)

Counts are stored, probabilities re-derived on load, so normalization stays
checkable.  Records are emitted sorted: saving is deterministic and
round-trips byte-exactly.
"""

from __future__ import annotations

from pathlib import Path

from .grammar_types import ATTACH_RULE, DeltaModel, Model, PcfgModel, PlcgModel, Rule

FORMAT_VERSION = 1
_HEADER = "PLCG-MODEL"
_KINDS = {"pcfg": PcfgModel, "plcg": PlcgModel, "delta": DeltaModel}


class ModelFormatError(ValueError):
    pass


def model_kind(model: Model) -> str:
    if isinstance(model, PcfgModel):
        return "pcfg"
    if isinstance(model, DeltaModel):
        return "delta"
    return "plcg"


def _attach_token(rule: Rule) -> list[str]:
    if rule == ATTACH_RULE:
        return [rule.lhs]
    return [rule.lhs, *rule.rhs]


def _plcg_records(model: PlcgModel) -> list[str]:
    recs = []
    for gc, dist in model.shift_counts.items():
        for lc, c in dist.items():
            recs.append("SHIFT\t%s\t%s\t%d" % (gc, lc, c))
    for (lc, gc), (att, total) in model.att_counts.items():
        recs.append("ATT\t%s\t%s\t%d\t%d" % (lc, gc, att, total))
    for (lc, gc), dist in model.proj_counts.items():
        for rule, c in dist.items():
            recs.append(
                "PROJ\t%s\t%s\t%s\t%s\t%d" % (gc, lc, rule.lhs, "\t".join(rule.rhs), c)
            )
    return recs


def dumps(model: Model) -> str:
    kind = model_kind(model)
    recs: list[str] = []
    if kind == "pcfg":
        for rule, c in model.counts.items():
            recs.append("RULE\t%s\t%s\t%d" % (rule.lhs, "\t".join(rule.rhs), c))
    elif kind == "plcg":
        recs = _plcg_records(model)
    else:
        recs = _plcg_records(model.base)
        for (depth, lc, gc), dist in model.delta_counts.items():
            for delta, c in dist.items():
                recs.append("DELTA\t%d\t%s\t%s\t%d\t%d" % (depth, lc, gc, delta, c))
        for (lc, gc, depth, delta), dist in model.rule_counts.items():
            for rule, c in dist.items():
                recs.append(
                    "DPROJ\t%d\t%d\t%s\t%s\t%s\t%d"
                    % (depth, delta, lc, gc, "\t".join(_attach_token(rule)), c)
                )
    recs.sort()
    header = "%s\t%d\t%s\t%s" % (_HEADER, FORMAT_VERSION, kind, model.start)
    return "".join(line + "\n" for line in [header] + recs)


def loads(text: str) -> Model:
    lines = text.splitlines()
    if not lines:
        raise ModelFormatError("empty model file")
    head = lines[0].split("\t")
    if len(head) != 4 or head[0] != _HEADER:
        raise ModelFormatError("bad header: %r" % lines[0])
    if int(head[1]) != FORMAT_VERSION:
        raise ModelFormatError("unsupported format version %s" % head[1])
    kind, start = head[2], head[3]
    if kind not in _KINDS:
        raise ModelFormatError("unknown model kind %r" % kind)

    rule_counts: dict[Rule, int] = {}
    shift: dict[str, dict[str, int]] = {}
    att: dict[tuple[str, str], tuple[int, int]] = {}
    proj: dict[tuple[str, str], dict[Rule, int]] = {}
    dcounts: dict[tuple[int, str, str], dict[int, int]] = {}
    drules: dict[tuple[str, str, int, int], dict[Rule, int]] = {}

    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        tag = fields[0]
        try:
            if tag == "RULE":
                rule = Rule(fields[1], tuple(fields[2:-1]))
                rule_counts[rule] = int(fields[-1])
            elif tag == "SHIFT":
                gc, lc, c = fields[1], fields[2], int(fields[3])
                shift.setdefault(gc, {})[lc] = c
            elif tag == "ATT":
                att[(fields[1], fields[2])] = (int(fields[3]), int(fields[4]))
            elif tag == "PROJ":
                gc, lc = fields[1], fields[2]
                rule = Rule(fields[3], tuple(fields[4:-1]))
                proj.setdefault((lc, gc), {})[rule] = int(fields[-1])
            elif tag == "DELTA":
                depth, lc, gc = int(fields[1]), fields[2], fields[3]
                dcounts.setdefault((depth, lc, gc), {})[int(fields[4])] = int(fields[5])
            elif tag == "DPROJ":
                depth, delta, lc, gc = int(fields[1]), int(fields[2]), fields[3], fields[4]
                body = fields[5:-1]
                rule = ATTACH_RULE if body == [ATTACH_RULE.lhs] else Rule(body[0], tuple(body[1:]))
                drules.setdefault((lc, gc, depth, delta), {})[rule] = int(fields[-1])
            else:
                raise ModelFormatError("unknown record kind %r" % tag)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ModelFormatError):
                raise
            raise ModelFormatError("malformed line %d: %r" % (lineno, line)) from exc

    if kind == "pcfg":
        return PcfgModel(rule_counts, start)
    base = PlcgModel(shift, att, proj, start)
    if kind == "plcg":
        return base
    return DeltaModel(dcounts, drules, base)


def save_model(model: Model, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")


def load_model(path: str | Path) -> Model:
    return loads(Path(path).read_text(encoding="utf-8"))
