from singres.cli import main

raise SystemExit(main())
