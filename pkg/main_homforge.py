"""
Простая обертка для запуска CLI homforge.
Позволяет запускать команды напрямую:
python main_homforge.py validate --complex homforge/fixtures/koszul_xy.json
python main_homforge.py tate --ring homforge/fixtures/kx2.json --bound 8
python main_homforge.py suite paper-checks --format text


pip install -r requirements.txt
"""

import sys

from homforge.main import main

if __name__ == '__main__':
    sys.exit(main())
