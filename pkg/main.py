import sys

from lpfchains.cli import entrypoint


def main():
    """Inicializa configuracao e logging e executa o comando pedido."""
    raise SystemExit(entrypoint(sys.argv[1:]))


if __name__ == "__main__":
    main()
