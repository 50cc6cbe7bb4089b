# Output Generation
