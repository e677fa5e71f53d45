from fockforge.cli import main

raise SystemExit(main())
