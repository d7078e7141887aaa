from contactkit.cli import main

main()
