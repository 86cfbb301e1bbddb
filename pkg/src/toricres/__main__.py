from toricres.cli import main

raise SystemExit(main())
