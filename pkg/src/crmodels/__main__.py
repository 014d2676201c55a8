from crmodels.cli import main

main()
