"""
Вспомогательные функции для работы с файлами, JSON и строками многочленов.
"""

import hashlib
import json
import logging
import os
import re
from typing import Any, Optional

from homforge.errors import InputError

logger = logging.getLogger(__name__)

# Допустимый синтаксис многочленов: числа, имена переменных, + - * / ^ и скобки
_POLYNOMIAL_PATTERN = re.compile(r"^[A-Za-z0-9_+\-*/^(). ]+$")
_NAME_PATTERN = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def read_file(file_path: str) -> str:
    """
    Читает содержимое текстового файла.

    Args:
        file_path: Путь к файлу

    Returns:
        str: Содержимое файла

    Raises:
        InputError: Если файл не найден или не читается
    """
    try:
        logger.debug(f"Чтение файла: {file_path}")

        if not os.path.exists(file_path):
            raise InputError(f"Файл не найден: {file_path}")

        with open(file_path, 'r', encoding='utf-8') as f:
            content = f.read()

        if not content.strip():
            logger.warning(f"Файл пуст: {file_path}")

        return content

    except InputError:
        raise
    except UnicodeDecodeError as e:
        error_msg = f"Ошибка декодирования файла (возможно, не UTF-8): {e}"
        logger.error(error_msg)
        raise InputError(error_msg, location=file_path)
    except OSError as e:
        error_msg = f"Ошибка при чтении файла: {e}"
        logger.error(error_msg)
        raise InputError(error_msg, location=file_path)


def read_json(file_path: str) -> Any:
    """
    Читает JSON-файл.

    Raises:
        InputError: При отсутствии файла или синтаксической ошибке JSON
    """
    content = read_file(file_path)
    try:
        return json.loads(content)
    except json.JSONDecodeError as e:
        error_msg = f"Некорректный JSON: {e.msg}"
        logger.error(error_msg)
        raise InputError(error_msg, location=f"{file_path}:{e.lineno}:{e.colno}")


def file_digest(file_path: str) -> str:
    """SHA-256 содержимого файла (для отчетов)."""
    with open(file_path, 'rb') as f:
        return hashlib.sha256(f.read()).hexdigest()


def validate_polynomial_text(text: Optional[str]) -> bool:
    """
    Проверяет, что строка многочлена непустая и содержит только разрешенные символы.

    Args:
        text: Строка вида "3*x^2*y - 1/2"

    Returns:
        bool: True если строка допустима, False иначе
    """
    if not text or not text.strip():
        return False
    return bool(_POLYNOMIAL_PATTERN.match(text))


def validate_name(name: Any) -> bool:
    return isinstance(name, str) and bool(_NAME_PATTERN.match(name))


def dump_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)
