def rain():
    total = 0
    count = 0
    while True:
        line = input("Rainfall: ")
        if line == "-999":
            break
        try:
            value = float(line)
        except ValueError:
            continue
        if value < 0:
            continue
        total += value
        count += 1
    try:
        return total / count
    except ZeroDivisionError:
        return 0

if __name__ == "__main__":
    print(rain())
