# cli/app.py
"""Командная строка: построение многочленов, проверки, сканирование, сертификаты.

Коды выхода: 0 все отчеты pass/skipped, 1 есть fail, 2 ошибка аргументов
или превышение ограничений.
"""
import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import structlog

from core.config import AppSettings, get_settings
from core.exceptions import MlabError
from core.logging import setup_logging
from domain.entities.report import VerificationReport
from domain.value_objects.family import FamilySpec, ZetaDescriptor
from application.services.orbit_service import FamilyService
from application.services.verification_service import (
    IdentityBounds,
    VerificationService,
    desk_grid,
    run_cells,
)
from infrastructure.reports.report_writer import render_bundle, render_reports, write_bundle, write_reports

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-cap", type=int, help="ограничение на степень промежуточных многочленов")
    common.add_argument("--cache-dir", type=Path, help="каталог дискового кеша (иначе MLAB_CACHE_DIR)")
    common.add_argument("--jobs", type=int, help="размер пула процессов для verify all")
    common.add_argument("--format", choices=["text", "json", "csv"], help="формат отчета")
    common.add_argument("--q-max", type=int, help="граница перебора простых q в certify")
    common.add_argument("--output", type=Path, help="файл отчета (запись атомарная)")
    common.add_argument("--bundle-out", type=Path, help="файл пакета контрпримеров (иначе stderr)")
    common.add_argument("--timings", action="store_true", help="заполнять elapsed_ms")
    common.add_argument("--log-level", default=None, help="уровень логирования")
    common.add_argument("--json-logs", action="store_true", help="логи в stderr одной JSON-строкой на событие")
    return common


def _family_flags(parser: argparse.ArgumentParser, m_required: bool = True) -> None:
    parser.add_argument("--d", type=int, required=True)
    parser.add_argument("--m", type=int, required=m_required, default=None if m_required else 0)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--zeta-order", type=int, help="k; по умолчанию p для d = p^e, иначе d")
    parser.add_argument("--zeta-power", type=int, default=1, help="s, gcd(s, k) = 1")


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="mlab",
        description="Misiurewicz Lab: многочлены Глисона и Мишуревича над Z[ζ]",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", parents=[common], help="построить G^ζ_{d,m,n}")
    _family_flags(build, m_required=False)

    gleason = commands.add_parser("gleason", parents=[common], help="построить G_{d,0,n}")
    gleason.add_argument("--d", type=int, required=True)
    gleason.add_argument("--n", type=int, required=True)

    verify = commands.add_parser("verify", help="проверка утверждений")
    claims = verify.add_subparsers(dest="claim", required=True)

    thm21 = claims.add_parser("thm2-1", parents=[common], help="приведенность, степень, простые корни")
    _family_flags(thm21, m_required=False)

    thm11 = claims.add_parser("thm1-1", parents=[common], help="нормы a_i в корнях G")
    _family_flags(thm11)
    thm11.add_argument("--i-max", type=int, help="по умолчанию 3n")

    thm15 = claims.add_parser("thm1-5", parents=[common], help="G^ζ_{d,j,ℓ} в корнях G^ζ_{d,m,n}")
    _family_flags(thm15)
    thm15.add_argument("--j", type=int, required=True)
    thm15.add_argument("--l", type=int, required=True)

    lehmer = claims.add_parser("lehmer", parents=[common], help="Φ_m(ζ_n) единица или нет")
    lehmer.add_argument("--m", type=int, required=True)
    lehmer.add_argument("--n", type=int, required=True)

    identities = claims.add_parser("identities", parents=[common], help="тождества для одного d")
    identities.add_argument("--d", type=int, required=True)
    identities.add_argument("--support", action="store_true", help="добавить ident.support")

    claims.add_parser("all", parents=[common], help="полная настольная сетка")

    scan = commands.add_parser("scan", help="сканирование гипотез")
    conjectures = scan.add_subparsers(dest="conjecture", required=True)
    conj = conjectures.add_parser("conj1-6", parents=[common], help="j = m, все ℓ <= n")
    _family_flags(conj)
    conj.add_argument("--beyond-n", action="store_true", help="также ℓ в (n, 2n], без вердикта")

    certify = commands.add_parser("certify", parents=[common], help="сертификат неприводимости")
    _family_flags(certify, m_required=False)
    certify.add_argument("--degree-bound", action="store_true", help="сертификат по степени ветвления")

    newton = commands.add_parser("newton", parents=[common], help="многоугольник Ньютона (1+t)^{p^e} - 1")
    newton.add_argument("--p", type=int, required=True)
    newton.add_argument("--e", type=int, required=True)

    return parser


def _settings_from(args: argparse.Namespace) -> AppSettings:
    def given(**values) -> Dict:
        return {key: value for key, value in values.items() if value is not None}

    report = given(format=args.format, jobs=args.jobs)
    if args.timings:
        report["record_timings"] = True
    if getattr(args, "beyond_n", False):
        report["conjecture_beyond_n"] = True
    return get_settings().with_overrides(
        algebra=given(degree_cap=args.degree_cap),
        certifier=given(q_max=args.q_max),
        cache=given(cache_dir=args.cache_dir),
        report=report,
    )


def _spec_from(args: argparse.Namespace) -> FamilySpec:
    m = args.m
    if m == 0:
        return FamilySpec.gleason(args.d, args.n)
    zeta = None
    if args.zeta_order is not None:
        zeta = ZetaDescriptor(args.zeta_order, args.zeta_power)
    return FamilySpec.misiurewicz(args.d, m, args.n, zeta)


def _emit(reports: List[VerificationReport], args: argparse.Namespace, settings: AppSettings) -> int:
    fmt = settings.report.format
    if args.output:
        write_reports(reports, args.output, fmt)
    else:
        sys.stdout.write(render_reports(reports, fmt))
    if not any(r.failed for r in reports):
        return EXIT_OK
    # пакет контрпримеров пишется всегда; --bundle-out задает только место
    if args.bundle_out:
        write_bundle(reports, args.bundle_out)
    else:
        sys.stderr.write(render_bundle(reports))
    return EXIT_FAIL


def _print_poly(spec: FamilySpec, settings: AppSettings) -> int:
    family = FamilyService(settings)
    poly = family.build(spec)
    sys.stdout.write(f"{poly}\n")
    logger.info("polynomial ready", **spec.to_params(), degree=poly.degree)
    return EXIT_OK


def _verify(args: argparse.Namespace, service: VerificationService) -> List[VerificationReport]:
    if args.claim == "thm2-1":
        return [service.verify_construction(_spec_from(args))]
    if args.claim == "thm1-1":
        return service.verify_thm_1_1(_spec_from(args), args.i_max)
    if args.claim == "thm1-5":
        return [service.verify_thm_1_5(_spec_from(args), args.j, args.l)]
    if args.claim == "lehmer":
        return [service.verify_lehmer(args.m, args.n)]
    if args.claim == "identities":
        return service.verify_identities(args.d, IdentityBounds(support=args.support))
    return run_cells(list(desk_grid(service.settings)), service.settings)


def _dispatch(args: argparse.Namespace, settings: AppSettings) -> int:
    if args.command == "build":
        return _print_poly(_spec_from(args), settings)
    if args.command == "gleason":
        return _print_poly(FamilySpec.gleason(args.d, args.n), settings)

    service = VerificationService(settings)
    handlers: Dict[str, Callable[[], List[VerificationReport]]] = {
        "verify": lambda: _verify(args, service),
        "scan": lambda: service.scan_conj_1_6(_spec_from(args), args.beyond_n),
        "certify": lambda: [service.verify_certificate(_spec_from(args), args.degree_bound)],
        "newton": lambda: [service.verify_newton(args.p, args.e)],
    }
    reports = handlers[args.command]()
    reports.sort(key=VerificationReport.sort_key)
    return _emit(reports, args, settings)


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Разбор аргументов и запуск подкоманды; возвращает код выхода"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse завершает процесс сам: 0 для --help, 2 для ошибок
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    try:
        settings = _settings_from(args)
    except ValueError as e:
        print(f"❌ invalid settings: {e}", file=sys.stderr)
        return EXIT_ERROR
    setup_logging(args.log_level or settings.log_level, json_logs=args.json_logs)

    try:
        return _dispatch(args, settings)
    except MlabError as e:
        logger.error("command failed", command=args.command, error=str(e))
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR
