from thompson.cli.app import main

main()
