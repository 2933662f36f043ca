"""
Пакет для точных вычислений в гомотопической категории свободных комплексов над локальными кольцами.
"""
