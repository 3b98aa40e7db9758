from rssiqueue.cli import main

raise SystemExit(main())
