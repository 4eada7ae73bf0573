"""Command line entry point: prepare, stopgen, classify, evaluate, stats.

Exit status is 0 on success, 1 on a usage error and 2 on a data error.
Options may also come from ``--config FILE`` (JSON); command-line flags win
over the file, and the file wins over built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import classify as clf_mod
from .corpus_prep import (
    IngestError,
    Label,
    PipelineConfig,
    corpus_stats,
    dumps_documents,
    ingest,
    load_documents,
    run_pipeline,
    stats_csv,
)
from .estimators import BernoulliNaiveBayes, CutoffDecisionTree, PresenceFeatures
from .evaluate import STOPWORD_MODES, SplitSpec, run_matrix
from .io import ResourceError, atomic_write, load_tsv, load_word_lines, resource_path
from .stopgen import (
    ListKind,
    MorphRules,
    StopwordList,
    build_frequency_table,
    combine_lists,
    generate_corpus_based,
    generate_egyptian_general,
    load_candidates,
    remove_stopwords,
)
from .textkit import load_lexicon
from .translit import TranslitRules

log = logging.getLogger("arabstop")

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# option dest -> is an input path (validated before running) ---------------------

INPUT_PATHS = {
    "prepare": ["in_path", "topic_words", "abbrev", "translit_rules", "translit_overrides",
                "gloss", "emoticons", "spam_phrases", "lexicon"],
    "stopgen": ["corpora", "candidates", "msa_lists", "english_stoplist", "rules",
                "content_words", "emoticons"],
    "classify": ["train", "stopwords", "predict", "emoticons"],
    "evaluate": ["corpora", "lists", "emoticons"],
    "stats": ["corpora"],
}
REQUIRED = {
    "prepare": ["in_path", "source", "out", "report"],
    "stopgen": ["corpora", "mode", "out"],
    "classify": ["train"],
    "evaluate": ["corpora", "lists", "out"],
    "stats": ["corpora"],
}


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="arabstop", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    subs = {}

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", help="JSON file with option values")
        subs[name] = p
        return p

    p = add("prepare", "filter and normalize a raw corpus file")
    p.add_argument("--in", dest="in_path", help="raw corpus, one JSON record per line")
    p.add_argument("--source", choices=["review", "facebook", "twitter"])
    p.add_argument("--topic-words", help="topic keywords or phrases, one per line")
    p.add_argument("--abbrev", help="abbreviation map TSV (default: bundled)")
    p.add_argument("--translit-rules", help="Franco-Arab rule table TSV (default: bundled)")
    p.add_argument("--translit-overrides", help="Franco word -> Arabic TSV")
    p.add_argument("--gloss", help="English -> Arabic TSV (default: bundled)")
    p.add_argument("--emoticons", help="emoticon lexicon (default: bundled)")
    p.add_argument("--spam-phrases", help="advertising phrases, one per line")
    p.add_argument("--lexicon", help="Arabic word frequency TSV used to rank transliterations")
    p.add_argument("--out", help="prepared corpus output (JSON lines)")
    p.add_argument("--report", help="filter report output (JSON)")

    p = add("stopgen", "generate a stopword list from prepared corpora")
    p.add_argument("--corpora", nargs="+", help="prepared corpus files")
    p.add_argument("--mode", choices=["corpus-based", "egyptian", "combined"])
    p.add_argument("--k", type=int, default=200, help="number of most frequent words (default 200)")
    p.add_argument("--candidates", help="candidate annotation TSV (egyptian/combined modes)")
    p.add_argument("--msa-lists", nargs="+", help="MSA stopword lists (default: bundled merged list)")
    p.add_argument("--english-stoplist", help="English stopword list (default: bundled 127 words)")
    p.add_argument("--rules", help="morphology rules TSV (default: bundled)")
    p.add_argument("--content-words", help="words marked as domain content, one per line")
    p.add_argument("--emoticons", help="emoticon lexicon (default: bundled)")
    p.add_argument("--out", help="stopword list output")
    p.add_argument("--review", help="JSON report of excluded and unreviewed words")

    p = add("classify", "train one classifier and dump it, optionally predicting a file")
    p.add_argument("--train", help="prepared, labeled corpus")
    p.add_argument("--classifier", choices=["NB", "DT"], default="NB")
    p.add_argument("--features", choices=["unigram", "bigram"], default="unigram")
    p.add_argument("--stopwords", help="stopword list applied before feature extraction")
    p.add_argument("--smoothing", type=float, default=clf_mod.DEFAULT_SMOOTHING)
    p.add_argument("--entropy-cutoff", type=float, default=0.8)
    p.add_argument("--depth-cutoff", type=int, default=5)
    p.add_argument("--support-cutoff", type=int, default=30)
    p.add_argument("--emoticons", help="emoticon lexicon (default: bundled)")
    p.add_argument("--dump", help="model dump output (default: stdout)")
    p.add_argument("--predict", help="corpus to label with the trained model")
    p.add_argument("--out", help="predictions output (JSON lines)")

    p = add("evaluate", "run the classifier x features x stopword-list matrix")
    p.add_argument("--corpora", nargs="+", help="prepared, labeled corpus files")
    p.add_argument("--lists", help="directory holding <mode>.txt stopword lists")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-fraction", type=float, default=0.75)
    p.add_argument("--out", help="results CSV")
    p.add_argument("--table", help="human-readable results table (markdown)")
    p.add_argument("--serial-timing", action="store_true", help="never time cells concurrently")
    p.add_argument("--jobs", type=int, default=1, help="parallel cells (ignored with --serial-timing)")
    p.add_argument("--stratify", action="store_true", help="split each label separately")
    p.add_argument("--emoticons", help="emoticon lexicon (default: bundled)")

    p = add("stats", "per-source positive/negative/neutral counts as CSV")
    p.add_argument("--corpora", nargs="+", help="corpus files")
    p.add_argument("--out", help="CSV output (default: stdout)")
    return parser, subs


def _parse(argv) -> argparse.Namespace:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        parser.exit(EXIT_USAGE, "arabstop: error: a command is required\n")
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise DataError(f"config {args.config} must hold a JSON object")
        section = cfg.get(args.command, {})
        values = {k: v for k, v in cfg.items() if not isinstance(v, dict)}
        values.update(section)
        known = {a.dest for a in subs[args.command]._actions}
        values = {k.replace("-", "_"): v for k, v in values.items()}
        values = {("in_path" if k == "in" else k): v for k, v in values.items()}
        subs[args.command].set_defaults(**{k: v for k, v in values.items() if k in known})
        args = parser.parse_args(argv)
    missing = [d for d in REQUIRED[args.command] if getattr(args, d) in (None, [])]
    if missing:
        flags = ", ".join("--" + ("in" if d == "in_path" else d.replace("_", "-")) for d in missing)
        subs[args.command].print_usage(sys.stderr)
        subs[args.command].exit(EXIT_USAGE, f"arabstop {args.command}: error: missing required {flags}\n")
    return args


def _check_inputs(args) -> None:
    missing = []
    for dest in INPUT_PATHS[args.command]:
        value = getattr(args, dest, None)
        for path in (value if isinstance(value, list) else [value]):
            if path is not None and not Path(path).exists():
                missing.append(str(path))
    if missing:
        raise DataError("missing input file(s): " + ", ".join(missing))


def _emoticons(args) -> frozenset[str]:
    return load_lexicon(args.emoticons or resource_path("emoticons.txt"))


def _word_file(path) -> tuple[str, ...]:
    return tuple(w for _, w in load_word_lines(path)) if path else ()


def cmd_prepare(args) -> int:
    posts, diagnostics = ingest(args.in_path, args.source)
    for d in diagnostics:
        print(f"{args.in_path}: {d}", file=sys.stderr)
    lexicon = None
    if args.lexicon:
        lexicon = {w: int(c) for w, c in load_tsv(args.lexicon).items()}
    config = PipelineConfig(
        topic_words=_word_file(args.topic_words),
        spam_phrases=_word_file(args.spam_phrases),
        abbreviations=load_tsv(args.abbrev or resource_path("abbreviations.tsv")),
        gloss=load_tsv(args.gloss or resource_path("gloss.tsv")),
        translit_rules=TranslitRules.load(args.translit_rules),
        translit_overrides=load_tsv(args.translit_overrides) if args.translit_overrides else {},
        lexicon=lexicon,
        emoticon_lexicon=_emoticons(args),
    )
    docs, report = run_pipeline(posts, config)
    payload = report.to_dict()
    payload["ingest_diagnostics"] = [{"line": d.line, "message": d.message} for d in diagnostics]
    atomic_write(args.out, dumps_documents(docs))
    atomic_write(args.report, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    log.info("prepared %d of %d posts", len(docs), len(posts))
    return 0


def _load_msa(paths) -> StopwordList:
    paths = paths or [resource_path("msa_merged.txt")]
    words = frozenset()
    for p in paths:
        words |= StopwordList.load(p).words
    return StopwordList("msa_lists", ListKind.MSA_GENERAL, words)


def cmd_stopgen(args) -> int:
    emoticons = _emoticons(args)
    corpora = [load_documents(p, emoticons) for p in args.corpora]
    table = build_frequency_table(corpora)
    rules = MorphRules.load(args.rules)
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.mode == "corpus-based":
        result = generate_corpus_based(table, rules, args.k)
        review = None
    else:
        if not args.candidates:
            raise UsageError(f"--candidates is required for --mode {args.mode}")
        msa = _load_msa(args.msa_lists)
        english = StopwordList.load(args.english_stoplist or resource_path("english_stopwords.txt"))
        result, review = generate_egyptian_general(
            table, load_candidates(args.candidates, table), rules, args.k,
            msa.words, english.words, _word_file(args.content_words))
        if args.mode == "combined":
            result = combine_lists(result, msa, name="all_lists")
        if review.needs_review:
            log.warning("%d frequent words lack evidence and were left out: %s",
                        len(review.needs_review), " ".join(review.needs_review))
    atomic_write(args.out, result.dumps())
    if args.review and review is not None:
        atomic_write(args.review, json.dumps({
            "stems": review.stems,
            "evidence": {k: list(v) for k, v in review.evidence.items()},
            "content_words": review.content_words,
            "needs_review": review.needs_review,
        }, ensure_ascii=False, indent=2) + "\n")
    print(f"{args.out}: {len(result)} words", file=sys.stderr)
    return 0


def _labeled(docs):
    return [d for d in docs if d.label in (Label.POSITIVE, Label.NEGATIVE)]


def cmd_classify(args) -> int:
    emoticons = _emoticons(args)
    docs = _labeled(load_documents(args.train, emoticons))
    stop = StopwordList.load(args.stopwords).words if args.stopwords else frozenset()
    feats = PresenceFeatures(args.features).fit([])
    X = feats.transform([remove_stopwords(d.tokens, stop) for d in docs])
    y = [d.label.value for d in docs]
    if args.classifier == "NB":
        model = BernoulliNaiveBayes(args.smoothing)
    else:
        model = CutoffDecisionTree(args.entropy_cutoff, args.depth_cutoff, args.support_cutoff)
    model.fit(X, y)
    dump = model.dump()
    if args.dump:
        atomic_write(args.dump, dump)
    else:
        sys.stdout.write(dump)
    if args.predict:
        targets = load_documents(args.predict, emoticons)
        preds = model.predict(feats.transform([remove_stopwords(d.tokens, stop) for d in targets]))
        lines = "".join(json.dumps({"id": d.id, "label": str(p)}, ensure_ascii=False) + "\n"
                        for d, p in zip(targets, preds))
        if args.out:
            atomic_write(args.out, lines)
        else:
            sys.stdout.write(lines)
    return 0


def load_list_dir(directory) -> dict[str, StopwordList]:
    """``<mode>.txt`` files from ``directory``. ``msa_lists`` falls back to the
    bundled list and ``all_lists`` to the union of MSA and Egyptian lists."""
    directory = Path(directory)
    kinds = {"msa_lists": ListKind.MSA_GENERAL, "corpus_based": ListKind.CORPUS_BASED,
             "egyptian_general": ListKind.EGYPTIAN_GENERAL, "all_lists": ListKind.COMBINED}
    lists = {}
    for mode, kind in kinds.items():
        path = directory / f"{mode}.txt"
        if path.exists():
            lists[mode] = StopwordList.load(path, kind, mode)
    if "msa_lists" not in lists:
        lists["msa_lists"] = _load_msa(None)
    if "all_lists" not in lists and "egyptian_general" in lists:
        lists["all_lists"] = combine_lists(lists["msa_lists"], lists["egyptian_general"], "all_lists")
    missing = [m for m in STOPWORD_MODES if m != "without" and m not in lists]
    if missing:
        raise DataError(f"{directory}: no list file for mode(s) {missing}")
    return lists


def cmd_evaluate(args) -> int:
    emoticons = _emoticons(args)
    corpora = {}
    for path in args.corpora:
        name = Path(path).stem
        if name in corpora:
            raise DataError(f"two corpora named {name!r}")
        corpora[name] = load_documents(path, emoticons)
    lists = load_list_dir(args.lists)
    spec = SplitSpec(train_fraction=args.train_fraction, seed=args.seed, stratify=args.stratify)
    n_jobs = 1 if args.serial_timing else args.jobs
    matrix = run_matrix(corpora, lists, spec, n_jobs=n_jobs)
    for r in matrix.results:
        if r.error:
            print(f"cell {r.corpus_name}/{r.classifier}/{r.feature_mode}/{r.stopword_mode}: {r.error}",
                  file=sys.stderr)
    atomic_write(args.out, matrix.to_csv())
    if args.table:
        atomic_write(args.table, matrix.to_table())
    return 0


def cmd_stats(args) -> int:
    docs = []
    for path in args.corpora:
        docs += load_documents(path)
    text = stats_csv(corpus_stats(docs))
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "prepare": cmd_prepare,
    "stopgen": cmd_stopgen,
    "classify": cmd_classify,
    "evaluate": cmd_evaluate,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DataError as exc:
        print(f"arabstop: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        _check_inputs(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"arabstop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, IngestError, ResourceError, ValueError, OSError) as exc:
        print(f"arabstop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
