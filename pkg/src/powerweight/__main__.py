from powerweight.cli import main

main()
