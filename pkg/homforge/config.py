"""
Конфигурация homforge.
Значения по умолчанию читаются из переменных окружения (файл .env поддерживается).
"""

import os
from typing import Optional

from dotenv import load_dotenv

from homforge.errors import InputError

# Загружаем переменные окружения из .env
load_dotenv()


# Нечисловые значения переменных окружения; сообщаются при запуске команды
ENV_ERRORS: list[str] = []


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        ENV_ERRORS.append(f"{name}={value!r}")
        return default


def validate() -> None:
    """
    Проверяет, что целочисленные переменные окружения разобраны.

    Raises:
        InputError: Значение переменной не является целым числом
    """
    if ENV_ERRORS:
        raise InputError(f"Переменные окружения должны быть целыми: {', '.join(ENV_ERRORS)}",
                         location="окружение")


# Зерно генератора случайных чисел для всех рандомизированных проверок
DEFAULT_SEED = _int_env("HOMFORGE_SEED", 0)

# Окно степеней: градуированные вычисления, материализация DG-алгебр
DEFAULT_WINDOW = _int_env("HOMFORGE_WINDOW", 12)

# Граница гомологической длины резольвент
DEFAULT_BOUND = _int_env("HOMFORGE_BOUND", 6)

# Поиск изоморфизмов в K(A)
ISO_SAMPLES = _int_env("HOMFORGE_ISO_SAMPLES", 64)
ISO_EXHAUSTIVE_DIM = _int_env("HOMFORGE_ISO_EXHAUSTIVE_DIM", 12)
EXHAUSTIVE_GRID = _int_env("HOMFORGE_EXHAUSTIVE_GRID", 4096)

# Проверка RAR3 на случайных морфизмах
RAR_SAMPLES = _int_env("HOMFORGE_RAR_SAMPLES", 32)

# Полный перебор идемпотентов для малых алгебр эндоморфизмов
IDEMPOTENT_EXHAUSTIVE_DIM = _int_env("HOMFORGE_IDEMPOTENT_EXHAUSTIVE_DIM", 8)

# Число случайных треугольников в проверке расщепления
MIYATA_TRIANGLES = _int_env("HOMFORGE_MIYATA_TRIANGLES", 50)

LOG_LEVEL = os.getenv("HOMFORGE_LOG_LEVEL", "INFO").upper()
LOG_FILE: Optional[str] = os.getenv("HOMFORGE_LOG_FILE") or None
