def rain():
    total = 0
    count = 0
    while True:
        line = input("Rainfall: ")
        if line == "-999":
            break
        try:
            amount = int(line)
        except ValueError:
            continue
        if amount < 0:
            continue
        total += amount
        count += 1
    if count > 0:
        return total / count
    return 0

if __name__ == "__main__":
    print(rain())
