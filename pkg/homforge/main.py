"""
CLI homforge: вычисления в гомотопической категории свободных комплексов над локальными кольцами.

Использование:
    python -m homforge.main validate --complex homforge/fixtures/koszul_xy.json
    python -m homforge.main tate --ring homforge/fixtures/kx2.json --bound 8
    python -m homforge.main suite quick
"""

import argparse
import logging
import sys
import time
from typing import Callable, Optional

from homforge import config
from homforge.complexes import (
    cohomology,
    cone,
    double_dual_iso,
    dual,
    euler_characteristic_check,
    long_exact_sequence_check,
    matlis_dual,
    triangle_on_map,
)
from homforge.errors import HomforgeError, InputError, InternalInconsistencyError, ZeroComplexError
from homforge.homotopy import hom_space_K, iso_in_K, minimize, rank, width
from homforge.loaders import InputLoader
from homforge.resolutions import koszul, minimal_resolution
from homforge.serre_ar import (
    ar_triangle_ending_at,
    ar_uniqueness_check,
    cone_power_family,
    finite_length_certificate,
    miyata_random_suite,
    miyata_split_test,
    serre_functor,
    serre_pairing_check,
    serre_width_check,
    verify_right_ar,
)
from homforge.suite import SUITES, run_suite
from homforge.tate import tate_filtration, tate_resolve, verify_good_filtration
from homforge.utils import dump_json

logger = logging.getLogger(__name__)

# Вердикты, при которых CLI завершается с кодом 1
FAILED_VERDICTS = {"refuted", "violation"}

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USER_ERROR = 2
EXIT_INTERNAL = 3
EXIT_INTERRUPTED = 130


def setup_logging(verbose: bool = False) -> None:
    """
    Настраивает логирование: stderr и, если задан HOMFORGE_LOG_FILE, файл.
    """
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if config.LOG_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILE, encoding='utf-8'))
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def setup_parser() -> argparse.ArgumentParser:
    """
    Настраивает парсер аргументов командной строки.

    Returns:
        argparse.ArgumentParser: Настроенный парсер
    """
    parser = argparse.ArgumentParser(
        prog='homforge',
        description='Комплексы, треугольники, резольвенты Тейта и AR-треугольники над локальными кольцами',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры использования:
  python -m homforge.main validate --complex homforge/fixtures/koszul_xy.json
  python -m homforge.main ar --complex homforge/fixtures/stalkA.json --ring homforge/fixtures/kx2.json
  python -m homforge.main tate --ring homforge/fixtures/kx2.json --bound 8
  python -m homforge.main suite paper-checks --format text
        """
    )

    # Общие флаги принимаются после любой команды
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='Зерно рандомизированных проверок')
    common.add_argument('--window', type=int, help='Окно степеней (DG-алгебры, градуированный бэкенд)')
    common.add_argument('--bound', type=int, help='Граница усечения резольвент')
    common.add_argument('--out', type=str, help='Путь для JSON-отчета')
    common.add_argument('--format', choices=['json', 'text'], default='json', help='Формат вывода')
    common.add_argument('--timings', action='store_true', help='Добавить время выполнения в отчет')
    common.add_argument('--verbose', action='store_true', help='Подробное логирование (DEBUG)')
    common.add_argument('--ring', type=str, help='Кольцо, перекрывающее поле "ring" во входных файлах')

    subparsers = parser.add_subparsers(dest='command', help='Доступные команды')

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    add('validate', 'Проверяет ∂∘∂ = 0 и минимальность комплекса').add_argument(
        '--complex', required=True, help='JSON-файл комплекса')
    add('cohomology', 'Когомологии комплекса').add_argument(
        '--complex', required=True, help='JSON-файл комплекса')
    add('minimize', 'Минимальная модель, ширина и ранг').add_argument(
        '--complex', required=True, help='JSON-файл комплекса')
    add('cone', 'Конус отображения и длинная точная последовательность').add_argument(
        '--map', required=True, help='JSON-файл цепного отображения')

    hom_parser = add('hom', 'Базис Hom_K(U, V[n])')
    hom_parser.add_argument('--source', required=True, help='Комплекс-источник')
    hom_parser.add_argument('--target', required=True, help='Комплекс-цель')
    hom_parser.add_argument('--shift', type=int, default=0, help='Сдвиг цели n')
    hom_parser.add_argument('--degree', type=int, help='Внутренняя степень (градуированный бэкенд)')

    add('dual', 'Двойственность D = Hom_A(−, A)').add_argument(
        '--complex', required=True, help='JSON-файл комплекса')
    matlis_parser = add('matlis', 'Двойственность Матлиса E')
    matlis_parser.add_argument('--complex', required=True, help='JSON-файл комплекса')
    matlis_parser.add_argument('--free-form', action='store_true',
                               help='Для горенштейнова кольца вернуть свободный комплекс')

    add('resolve', 'Минимальная свободная резольвента модуля').add_argument(
        '--module', required=True, help='JSON-файл модуля')
    koszul_parser = add('koszul', 'Комплекс Кошуля')
    koszul_parser.add_argument('--elements', required=True, help='Элементы через запятую, например "x,y"')

    tate_parser = add('tate', 'Резольвента Тейта поля вычетов')
    tate_parser.add_argument('--emit-filtration', action='store_true',
                             help='Переносить хорошую фильтрацию через все присоединения')
    add('filtration-verify', 'Проверка аксиом хорошей фильтрации резольвенты Тейта')

    serre_parser = add('serre', 'Функтор Серра F(X) и спаривание')
    serre_parser.add_argument('--complex', required=True, help='Комплекс X')
    serre_parser.add_argument('--pair', help='Комплекс Y для проверки спаривания')

    ar_parser = add('ar', 'AR-треугольник, заканчивающийся в X')
    ar_parser.add_argument('--complex', required=True, help='Неразложимый комплекс X')
    ar_parser.add_argument('--family', help='Семейство комплексов для проверки третьей аксиомы')
    ar_parser.add_argument('--uniqueness', action='store_true', help='Проверить единственность')

    miyata_parser = add('miyata', 'Тест расщепления треугольника')
    miyata_group = miyata_parser.add_mutually_exclusive_group(required=True)
    miyata_group.add_argument('--triangle', help='JSON-файл треугольника')
    miyata_group.add_argument('--random', type=int, metavar='COUNT',
                              help='Случайные конусные треугольники над --ring')

    family_parser = add('cone-family', 'Семейство cone(rⁿ·u)')
    family_parser.add_argument('--endo', required=True, help='JSON-файл эндоморфизма u')
    family_parser.add_argument('--element', default='x', help='Элемент r')
    family_parser.add_argument('--count', type=int, default=8, help='Число членов семейства')

    iso_parser = add('iso', 'Изоморфизм в K(A)')
    iso_parser.add_argument('--left', required=True, help='Первый комплекс')
    iso_parser.add_argument('--right', required=True, help='Второй комплекс')

    add('suite', 'Приемочные наборы проверок').add_argument(
        'name', help=f'Имя набора: {", ".join(SUITES)}')

    return parser


# --- команды ---

def _verdict(ok: bool) -> str:
    return "ok" if ok else "violation"


def _require_ring(args: argparse.Namespace, loader: InputLoader):
    if not args.ring:
        raise InputError("Команда требует флаг --ring", location=args.command)
    return loader.ring(args.ring)


def cmd_validate(args, loader: InputLoader) -> tuple[str, dict]:
    C = loader.complex(args.complex, check=False)
    report = C.validate()
    return _verdict(report.ok), {"complex": C.describe(), "ranks": {str(i): r for i, r in C.ranks().items()},
                                 "minimal": C.is_minimal(), "validation": report.to_json()}


def cmd_cohomology(args, loader: InputLoader) -> tuple[str, dict]:
    C = loader.complex(args.complex)
    groups = [cohomology(C, i).to_json(C.algebra.field.format) for i in sorted(set(C.terms))]
    result = {"complex": C.describe(), "cohomology": groups}
    if C.algebra.is_artinian:
        result["euler_characteristic"] = euler_characteristic_check(C)
    return "ok", result


def cmd_minimize(args, loader: InputLoader) -> tuple[str, dict]:
    model = minimize(loader.complex(args.complex))
    result = {"minimal": model.minimal.describe()}
    try:
        result["width"] = width(model.minimal)
    except ZeroComplexError:
        result["width"] = None
    result["rank"] = rank(model.minimal)
    result["model"] = model.to_json()
    return "ok", result


def cmd_cone(args, loader: InputLoader) -> tuple[str, dict]:
    f = loader.chain_map(args.map)
    C = cone(f)
    result = {"cone": C.describe(), "complex": C.to_json()}
    if f.algebra.is_artinian:
        exact = long_exact_sequence_check(triangle_on_map(f))
        result["long_exact_sequence"] = exact["ok"]
        return _verdict(exact["ok"]), result
    return "ok", result


def cmd_hom(args, loader: InputLoader) -> tuple[str, dict]:
    U = loader.complex(args.source)
    V = loader.complex(args.target, algebra=U.algebra)
    space = hom_space_K(U, V, args.shift, args.degree)
    return "ok", {"dimension": space.dimension, "generators": space.generators(),
                  "basis": [f.to_json() for f in space.basis]}


def cmd_dual(args, loader: InputLoader) -> tuple[str, dict]:
    C = loader.complex(args.complex)
    iso = double_dual_iso(C)
    return _verdict(iso.is_chain_map()), {"dual": dual(C).to_json(), "double_dual_iso": iso.is_chain_map()}


def cmd_matlis(args, loader: InputLoader) -> tuple[str, dict]:
    C = loader.complex(args.complex)
    iso = double_dual_iso(C, matlis_dual)
    return _verdict(iso.is_chain_map()), {"matlis_dual": matlis_dual(C, args.free_form).to_json(),
                                          "double_dual_iso": iso.is_chain_map()}


def cmd_resolve(args, loader: InputLoader) -> tuple[str, dict]:
    resolution = minimal_resolution(loader.module(args.module), args.bound)
    return "ok", {"betti_line": " ".join(map(str, resolution.betti)), **resolution.to_json()}


def cmd_koszul(args, loader: InputLoader) -> tuple[str, dict]:
    algebra = _require_ring(args, loader)
    elements = [item.strip() for item in args.elements.split(",") if item.strip()]
    C = koszul(algebra, elements)
    dims = {str(i): cohomology(C, i).dimension for i in sorted(C.terms)}
    return "ok", {"complex": C.to_json(), "cohomology_dimensions": dims}


def cmd_tate(args, loader: InputLoader) -> tuple[str, dict]:
    algebra = _require_ring(args, loader)
    resolution = tate_resolve(algebra, args.bound, with_filtration=args.emit_filtration)
    return _verdict(resolution.acyclic()), {"betti_line": " ".join(map(str, resolution.betti)),
                                            "acyclic": resolution.acyclic(), **resolution.to_json()}


def cmd_filtration_verify(args, loader: InputLoader) -> tuple[str, dict]:
    algebra = _require_ring(args, loader)
    report = verify_good_filtration(tate_filtration(algebra, args.bound))
    return _verdict(report.ok), report.to_json()


def cmd_serre(args, loader: InputLoader) -> tuple[str, dict]:
    X = loader.complex(args.complex)
    image = serre_functor(X, args.bound)
    result = {"serre": image.output.describe(), "width": serre_width_check(X, args.bound),
              "image": image.to_json()}
    ok = result["width"]["ok"]
    if args.pair:
        pairing = serre_pairing_check(X, loader.complex(args.pair, algebra=X.algebra), args.seed, bound=args.bound)
        result["pairing"] = pairing
        ok = ok and pairing["ok"]
    return _verdict(ok), result


def cmd_ar(args, loader: InputLoader) -> tuple[str, dict]:
    X = loader.complex(args.complex)
    family = loader.family(args.family, algebra=X.algebra) if args.family else None
    t = ar_triangle_ending_at(X, args.bound)
    axioms = verify_right_ar(t, family, seed=args.seed)
    result = {"connecting": t.connecting.to_json()["components"], "axioms": axioms, "triangle": t.to_json()}
    ok = axioms["ok"]
    if args.uniqueness:
        result["uniqueness"] = ar_uniqueness_check(X, args.seed, args.bound)
        ok = ok and result["uniqueness"]["ok"]
    return _verdict(ok), result


def cmd_miyata(args, loader: InputLoader) -> tuple[str, dict]:
    if args.random is not None:
        report = miyata_random_suite([_require_ring(args, loader)], args.seed, args.random)
        if report["inconsistencies"]:
            raise InternalInconsistencyError(
                f"Противоречий в тесте Мияты: {report['inconsistencies']}", state=report)
        return "ok", report
    verdict = miyata_split_test(loader.triangle(args.triangle), args.seed)
    return verdict.verdict, verdict.to_json()


def cmd_cone_family(args, loader: InputLoader) -> tuple[str, dict]:
    u = loader.chain_map(args.endo)
    family = cone_power_family(u, u.algebra.parse(args.element), args.count, args.seed)
    result = family.to_json()
    result["pairwise_non_isomorphic"] = family.pairwise_non_isomorphic()
    result["finite_length"] = finite_length_certificate(u.source, args.window)
    return "ok", result


def cmd_iso(args, loader: InputLoader) -> tuple[str, dict]:
    X = loader.complex(args.left)
    Y = loader.complex(args.right, algebra=X.algebra)
    verdict = iso_in_K(X, Y, seed=args.seed)
    return verdict.verdict, verdict.to_json()


def cmd_suite(args, loader: InputLoader) -> tuple[str, dict]:
    report = run_suite(args.name, args.seed, args.timings)
    return _verdict(report["ok"]), report


COMMANDS: dict[str, Callable] = {
    'validate': cmd_validate,
    'cohomology': cmd_cohomology,
    'minimize': cmd_minimize,
    'cone': cmd_cone,
    'hom': cmd_hom,
    'dual': cmd_dual,
    'matlis': cmd_matlis,
    'resolve': cmd_resolve,
    'koszul': cmd_koszul,
    'tate': cmd_tate,
    'filtration-verify': cmd_filtration_verify,
    'serre': cmd_serre,
    'ar': cmd_ar,
    'miyata': cmd_miyata,
    'cone-family': cmd_cone_family,
    'iso': cmd_iso,
    'suite': cmd_suite,
}


# --- отчет ---

def apply_overrides(args: argparse.Namespace) -> None:
    """Флаги --seed, --window, --bound перекрывают значения из окружения."""
    if args.seed is None:
        args.seed = config.DEFAULT_SEED
    config.DEFAULT_SEED = args.seed
    if args.window is not None:
        config.DEFAULT_WINDOW = args.window
    if args.bound is not None:
        config.DEFAULT_BOUND = args.bound


def run(args: argparse.Namespace) -> dict:
    """
    Выполняет команду и собирает отчет с фиксированным порядком полей.

    Raises:
        HomforgeError: Ошибки входных данных и вычислений
    """
    apply_overrides(args)
    started = time.perf_counter()
    loader = InputLoader(args.ring)
    verdict, result = COMMANDS[args.command](args, loader)
    report = {
        "command": args.command,
        "inputs": dict(sorted(loader.digests.items())),
        "seed": args.seed,
        "window": config.DEFAULT_WINDOW,
        "bound": config.DEFAULT_BOUND,
        "verdict": verdict,
        "result": result,
    }
    if args.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - started, 3)}
    return report


def print_summary(report: dict) -> None:
    """Краткая текстовая сводка: скалярные поля результата."""
    print("\n" + "=" * 60)
    print(f"КОМАНДА: {report['command']}")
    print("=" * 60)
    print(f"Вердикт: {report['verdict']}")
    for key, value in report["result"].items():
        if value is None or isinstance(value, (str, int, float, bool)):
            print(f"{key}: {value}")
        elif isinstance(value, list) and all(isinstance(v, (int, str)) for v in value):
            print(f"{key}: {' '.join(map(str, value))}")
        elif key == "connecting":
            print(f"{key}: {value}")
    if report["command"] == "suite":
        for item in report["result"]["items"]:
            mark = "OK" if item["ok"] else "FAIL"
            print(f"  [{mark}] {item['item']}. {item['title']}: {item['claim']}")
    print("=" * 60 + "\n")


def emit(report: dict, args: argparse.Namespace) -> None:
    text = dump_json(report)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text + "\n")
        logger.info(f"Отчет сохранен: {args.out}")
    if args.format == 'text':
        print_summary(report)
    elif not args.out:
        print(text)


def main(argv: Optional[list[str]] = None) -> int:
    """
    Главная функция CLI-приложения.

    Returns:
        int: Код выхода (0 успех, 1 опровержение, 2 ошибка пользователя, 3 внутреннее противоречие)
    """
    parser = setup_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USER_ERROR

    setup_logging(args.verbose)

    try:
        config.validate()
        report = run(args)
        emit(report, args)
        logger.info(f"Команда {args.command} завершена: {report['verdict']}")
        return EXIT_REFUTED if report["verdict"] in FAILED_VERDICTS else EXIT_OK

    except InternalInconsistencyError as e:
        logger.error(f"Внутреннее противоречие: {e}")
        print(f"\nВнутреннее противоречие: {e}", file=sys.stderr)
        print(dump_json(e.state) + "\n", file=sys.stderr)
        return EXIT_INTERNAL

    except HomforgeError as e:
        logger.error(f"Ошибка: {e}")
        print(f"\nОшибка: {e}\n", file=sys.stderr)
        return EXIT_USER_ERROR

    except OSError as e:
        logger.error(f"Ошибка ввода-вывода: {e}")
        print(f"\nОшибка: {e}\n", file=sys.stderr)
        return EXIT_USER_ERROR

    except KeyboardInterrupt:
        logger.info("Прервано пользователем")
        print("\n\nПрервано пользователем\n", file=sys.stderr)
        return EXIT_INTERRUPTED

    except Exception as e:
        logger.error(f"Неожиданная ошибка: {e}", exc_info=True)
        print(f"\nНеожиданная ошибка: {e}\n", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())
