from .commands import orientedmonoids


main = orientedmonoids.console_script


if __name__ == "__main__":
    main()
