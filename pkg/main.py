# main.py - точка входа приложения
"""
Точка входа в Misiurewicz Lab.
Построение многочленов Глисона/Мишуревича и проверка их арифметики из командной строки.
"""

import sys
from pathlib import Path

# Добавляем корневую директорию в Python path
ROOT_DIR = Path(__file__).parent
sys.path.insert(0, str(ROOT_DIR))


def main() -> int:
    """Главная функция"""
    from cli.app import run_command

    try:
        return run_command(sys.argv[1:])
    except KeyboardInterrupt:
        print("👋 Остановлено пользователем", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
